"""
Error hierarchy and retry helpers for the spectral pipeline.

Every failure a caller can act on is a SpectralError subclass carrying a stable
code and a details mapping, so the CLI can emit it as structured JSON.
"""

import logging
from functools import wraps
from typing import Any, Callable, Dict, Optional

from tenacity import RetryError, retry, retry_if_exception_type, stop_after_attempt

logger = logging.getLogger(__name__)


class SpectralError(Exception):
    """Base class for domain errors."""

    code = "spectral_error"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "code": self.code,
            "message": self.message,
            "details": self.details,
        }


class InvalidParameterError(SpectralError):
    code = "invalid_parameter"


class ProblemSchemaError(SpectralError):
    code = "problem_schema"


class ProblemValidationError(SpectralError):
    """A constructed problem violates one of its invariants."""

    code = "problem_invariant"

    def __init__(self, invariant: str, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, {"invariant": invariant, **(details or {})})
        self.invariant = invariant


class SingularEvaluationError(SpectralError):
    code = "singular_evaluation"


class UnsupportedEquationError(SpectralError):
    code = "unsupported_equation"


class SeriesError(SpectralError):
    code = "series"


class IntegrationError(SpectralError):
    code = "integration"


class MonodromyGeometryError(SpectralError):
    code = "monodromy_geometry"


class DegenerateEdgeError(SpectralError):
    code = "degenerate_edge"


class OracleError(SpectralError):
    code = "oracle_precondition"


class StepRejected(Exception):
    """Internal signal: solve_ivp returned an unsuccessful status."""


def integration_retry(attempts: int) -> Callable:
    """
    Retry an integration callable with progressively tighter step control.

    The wrapped function must accept a ``refinement`` keyword (0, 1, 2, ...) and
    raise ``StepRejected`` when the solver reports failure. After the last
    attempt an IntegrationError is raised.
    """

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            state = {"refinement": 0}

            @retry(
                stop=stop_after_attempt(attempts),
                retry=retry_if_exception_type(StepRejected),
                reraise=False,
            )
            def attempt():
                level = state["refinement"]
                state["refinement"] += 1
                if level:
                    logger.warning(f"{func.__name__}: retrying with refinement level {level}")
                return func(*args, refinement=level, **kwargs)

            try:
                return attempt()
            except RetryError as e:
                cause = e.last_attempt.exception()
                logger.error(f"{func.__name__} failed after {attempts} attempts: {cause}")
                raise IntegrationError(
                    f"integration failed after {attempts} attempts: {cause}",
                    {"attempts": attempts},
                ) from cause

        return wrapper

    return decorator


