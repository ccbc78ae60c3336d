from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from core.models.numbers import parse_complex
from core.models.problem import ProblemFamily


class CliCommand(str, Enum):
    ANALYZE = "analyze"
    EIGENVALUES = "eigenvalues"
    EIGENFUNCTION = "eigenfunction"
    MONODROMY = "monodromy"
    VERIFY = "verify"
    SWEEP = "sweep"
    REGION = "region"
    PROFILE = "profile"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


FAMILY_ARITY = {ProblemFamily.HULTHEN: 3, ProblemFamily.ALLEN_CAHN: 1}


class ProblemSource(BaseModel):
    family: Optional[ProblemFamily] = Field(None, examples=["hulthen"])
    params: Tuple[float, ...] = Field(default=(), examples=[(1.0, 10.0, 10.0)])
    problem_file: Optional[str] = Field(None, examples=["problems/hulthen.json"])

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.family is None) == (self.problem_file is None):
            raise ValueError("give either --family/--params or --problem, not both")
        if self.family is not None:
            if self.family == ProblemFamily.CUSTOM:
                raise ValueError("custom problems are read from a --problem file")
            expected = FAMILY_ARITY[self.family]
            if len(self.params) != expected:
                raise ValueError(f"{self.family.value} takes {expected} parameter(s), got {len(self.params)}")
        return self


class CliInvocation(BaseModel):
    command: CliCommand
    source: Optional[ProblemSource] = None
    out: Optional[str] = None
    format: OutputFormat = OutputFormat.JSON
    options: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _needs_problem(self):
        if self.command != CliCommand.SWEEP and self.source is None:
            raise ValueError(f"{self.command.value} needs a problem source")
        return self


# option parsers; ValueError becomes a usage error in the routes


def parse_params(text: str) -> Tuple[float, ...]:
    if not text.strip():
        return ()
    return tuple(float(part) for part in text.split(","))


def parse_range(text: str) -> Tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"expected lo:hi, got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def parse_grid(text: str) -> List[float]:
    """lo:hi:step as an inclusive list of sample points."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected lo:hi:step, got {text!r}")
    lo, hi, step = (float(part) for part in parts)
    if step <= 0 or lo > hi:
        raise ValueError(f"invalid grid {text!r}")
    n = int(round((hi - lo) / step)) + 1
    return [round(float(x), 12) for x in np.linspace(lo, lo + (n - 1) * step, n)]


def parse_lambda(text: str) -> complex:
    return parse_complex(text)
