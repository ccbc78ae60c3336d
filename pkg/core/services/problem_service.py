"""
Sturm–Liouville problems on the line and their heteroclinic compactification.

A problem is the quintuple (f, g, h, z-, z+): gamma solves gamma' = f(gamma) and
runs from the source z- to the sink z+, and the ODE coefficients are
mu(x) = g(gamma(x)), nu(x) = h(gamma(x)).
"""

import logging
import math
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Tuple, Union

import numpy as np
import orjson
from pydantic import TypeAdapter, ValidationError
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar
from scipy.special import expit

from core.config import get_settings
from core.models.problem import (
    FamilyTag,
    ProblemDocument,
    ProblemFamily,
    RationalFn,
    SLProblem,
)
from core.services.error_handling import (
    IntegrationError,
    InvalidParameterError,
    ProblemSchemaError,
    ProblemValidationError,
    SingularEvaluationError,
)
from core.services.helper import polynomials as poly

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
_document_adapter = TypeAdapter(ProblemDocument)


def make_hulthen(alpha1: float, alpha2: float, alpha3: float) -> SLProblem:
    """nu(x) = alpha2/(e^x + alpha1) - alpha3/(e^x + alpha1)^2 with f = z(1 - z)."""
    for name, value in (("alpha1", alpha1), ("alpha2", alpha2), ("alpha3", alpha3)):
        if not (math.isfinite(value) and value > 0):
            raise InvalidParameterError(f"{name} must be a positive number, got {value}", {name: value})
    c = alpha1 - 1.0
    h = RationalFn(
        numerator=(
            alpha1 * alpha2 - alpha3,
            -alpha2 * (2.0 * alpha1 - 1.0) + 2.0 * alpha3,
            alpha2 * c - alpha3,
        ),
        denominator=(alpha1**2, -2.0 * alpha1 * c, c**2),
    )
    problem = SLProblem(
        f=RationalFn.polynomial([0.0, 1.0, -1.0]),
        g=RationalFn.constant(0.0),
        h=h,
        z_minus=0.0,
        z_plus=1.0,
        gamma_init=0.5,
        family=FamilyTag(family=ProblemFamily.HULTHEN, params=(alpha1, alpha2, alpha3)),
    )
    validate_problem(problem)
    return problem


def make_allen_cahn(alpha: float) -> SLProblem:
    """Linearization about the bistable front phi(x) = 1/(e^{x/sqrt2} + 1), written in z = 1 - phi."""
    if not (math.isfinite(alpha) and 0.0 < alpha < 1.0):
        raise InvalidParameterError(f"alpha must lie in (0, 1), got {alpha}", {"alpha": alpha})
    problem = SLProblem(
        f=RationalFn.polynomial([0.0, 1.0 / SQRT2, -1.0 / SQRT2]),
        g=RationalFn.constant(SQRT2 * (0.5 - alpha)),
        h=RationalFn.polynomial([alpha - 1.0, 2.0 * (2.0 - alpha), -3.0]),
        z_minus=0.0,
        z_plus=1.0,
        gamma_init=0.5,
        family=FamilyTag(family=ProblemFamily.ALLEN_CAHN, params=(alpha,)),
    )
    validate_problem(problem)
    return problem


def validate_problem(p: SLProblem) -> None:
    """Raise ProblemValidationError naming the first violated invariant."""
    if p.z_minus == p.z_plus:
        raise ProblemValidationError("distinct_endpoints", "z- and z+ must differ")

    f_prime = p.f.derivative()
    scale = max(1.0, max(abs(c) for c in p.f.numerator))
    for label, z in (("z-", p.z_minus), ("z+", p.z_plus)):
        if abs(p.f(z)) > 1e-12 * scale:
            raise ProblemValidationError(
                "f_zero_at_endpoints", f"f({label}) = {p.f(z)} is not zero", {"endpoint": label}
            )
        if abs(f_prime(z)) <= 1e-12 * scale:
            raise ProblemValidationError(
                "f_prime_nonzero",
                f"f'({label})=0, singularity not regular-linearizable",
                {"endpoint": label},
            )

    if not (f_prime(p.z_minus) > 0 and f_prime(p.z_plus) < 0):
        raise ProblemValidationError(
            "source_sink",
            "z- must be a source (f'(z-) > 0) and z+ a sink (f'(z+) < 0)",
            {"f_prime_minus": float(f_prime(p.z_minus)), "f_prime_plus": float(f_prime(p.z_plus))},
        )

    for name, fn in (("g", p.g), ("h", p.h)):
        for label, z in (("z-", p.z_minus), ("z+", p.z_plus)):
            if poly.evaluate(fn.denominator, z) == 0:
                raise ProblemValidationError(
                    "holomorphic_at_endpoints",
                    f"{name} has a pole at {label}",
                    {"function": name, "endpoint": label},
                )

    lo, hi = sorted((p.z_minus, p.z_plus))
    for root in poly.roots(p.f.numerator):
        # double roots split into near-real pairs under rounding
        if abs(root.imag) < 1e-6 and lo + 1e-9 < root.real < hi - 1e-9:
            raise ProblemValidationError(
                "no_interior_zero_of_f",
                f"f vanishes at {root.real} between z- and z+",
                {"zero": float(root.real)},
            )

    if not (lo < p.gamma_init < hi):
        raise ProblemValidationError(
            "gamma_init_between", f"gamma_init={p.gamma_init} is not strictly between z- and z+"
        )

    for name, fn in (("g", p.g), ("h", p.h)):
        for root in poly.roots(fn.denominator):
            if abs(root.imag) < 1e-12 and lo <= root.real <= hi:
                raise ProblemValidationError(
                    "poles_on_orbit",
                    f"{name} has a pole at {root.real} on the orbit segment",
                    {"function": name, "pole": float(root.real)},
                )


def parse_problem(document: Union[str, bytes, Dict[str, Any]]) -> SLProblem:
    """Build a problem from a config document (JSON text or an already decoded mapping)."""
    try:
        raw = orjson.loads(document) if isinstance(document, (str, bytes)) else document
    except orjson.JSONDecodeError as e:
        raise ProblemSchemaError(f"problem document is not valid JSON: {e}") from e
    try:
        doc = _document_adapter.validate_python(raw)
    except ValidationError as e:
        raise ProblemSchemaError(
            "problem document does not match the schema",
            {"errors": [err["msg"] for err in e.errors()]},
        ) from e

    if doc.family == "hulthen":
        return make_hulthen(*doc.params)
    if doc.family == "allen_cahn":
        return make_allen_cahn(doc.params[0])

    try:
        problem = SLProblem(
            f=RationalFn.polynomial(doc.f),
            g=RationalFn(numerator=tuple(doc.g.num), denominator=tuple(doc.g.den)),
            h=RationalFn(numerator=tuple(doc.h.num), denominator=tuple(doc.h.den)),
            z_minus=doc.z_minus,
            z_plus=doc.z_plus,
            gamma_init=doc.gamma_init,
        )
    except ValidationError as e:
        raise ProblemSchemaError(
            "custom problem is malformed", {"errors": [err["msg"] for err in e.errors()]}
        ) from e
    validate_problem(problem)
    logger.info(f"Parsed custom problem {problem.label()}")
    return problem


def load_problem_file(path: Union[str, Path]) -> SLProblem:
    try:
        text = Path(path).read_bytes()
    except OSError as e:
        raise ProblemSchemaError(f"cannot read problem file {path}: {e}") from e
    return parse_problem(text)


def problem_to_document(p: SLProblem) -> Dict[str, Any]:
    if not p.is_custom:
        return {"family": p.family.family.value, "params": list(p.family.params)}
    return {
        "family": "custom",
        "f": list(p.f.numerator),
        "g": {"num": list(p.g.numerator), "den": list(p.g.denominator)},
        "h": {"num": list(p.h.numerator), "den": list(p.h.denominator)},
        "z_minus": p.z_minus,
        "z_plus": p.z_plus,
        "gamma_init": p.gamma_init,
    }


# heteroclinic orbit


def _closed_form_rate(p: SLProblem) -> float:
    return 1.0 if p.family.family == ProblemFamily.HULTHEN else 1.0 / SQRT2


@lru_cache(maxsize=64)
def _custom_orbit(p: SLProblem):
    """Dense forward and backward solutions of gamma' = f(gamma) from gamma(0) = gamma_init."""
    settings = get_settings()
    f_prime = p.f.derivative()
    rate_minus = float(f_prime(p.z_minus))
    rate_plus = float(f_prime(p.z_plus))
    x_hi = settings.heteroclinic_span / abs(rate_plus)
    x_lo = -settings.heteroclinic_span / abs(rate_minus)
    lo, hi = sorted((p.z_minus, p.z_plus))

    def rhs(_x, y):
        return [p.f(min(max(y[0], lo), hi))]

    solutions = []
    for end in (x_hi, x_lo):
        sol = solve_ivp(
            rhs,
            (0.0, end),
            [p.gamma_init],
            method="DOP853",
            rtol=settings.heteroclinic_rtol,
            atol=1e-15,
            dense_output=True,
        )
        if not sol.success:
            logger.error(f"Heteroclinic integration failed for {p.label()}: {sol.message}")
            raise IntegrationError(f"heteroclinic integration failed: {sol.message}")
        solutions.append(sol)
    forward, backward = solutions
    end_plus = float(np.clip(forward.y[0, -1], lo, hi))
    end_minus = float(np.clip(backward.y[0, -1], lo, hi))
    logger.debug(f"Custom orbit for {p.label()} spans x in [{x_lo:.3g}, {x_hi:.3g}]")
    return x_lo, x_hi, forward.sol, backward.sol, end_minus, end_plus, rate_minus, rate_plus


def heteroclinic_offsets(p: SLProblem, x: float) -> Tuple[float, float]:
    """(gamma(x) - z-, z+ - gamma(x)) computed without cancellation where possible."""
    if p.family.family == ProblemFamily.HULTHEN:
        return float(expit(x)), float(expit(-x))
    if p.family.family == ProblemFamily.ALLEN_CAHN:
        return float(expit(x / SQRT2)), float(expit(-x / SQRT2))

    x_lo, x_hi, forward, backward, end_minus, end_plus, rate_minus, rate_plus = _custom_orbit(p)
    lo, hi = sorted((p.z_minus, p.z_plus))
    if x > x_hi:
        to_plus = (p.z_plus - end_plus) * math.exp(rate_plus * (x - x_hi))
        return p.z_plus - p.z_minus - to_plus, to_plus
    if x < x_lo:
        from_minus = (end_minus - p.z_minus) * math.exp(rate_minus * (x - x_lo))
        return from_minus, p.z_plus - p.z_minus - from_minus
    value = forward(x)[0] if x >= 0 else backward(x)[0]
    value = float(min(max(value, lo), hi))
    return value - p.z_minus, p.z_plus - value


def heteroclinic_value(p: SLProblem, x: float) -> float:
    if p.family.family == ProblemFamily.HULTHEN:
        return float(expit(x))
    if p.family.family == ProblemFamily.ALLEN_CAHN:
        return float(expit(x / SQRT2))
    from_minus, _ = heteroclinic_offsets(p, x)
    return p.z_minus + from_minus


def front_profile(p: SLProblem, x: float) -> float:
    """The Allen–Cahn front phi(x) = 1 - gamma(x)."""
    if p.family.family != ProblemFamily.ALLEN_CAHN:
        raise InvalidParameterError("front_profile is defined for the Allen–Cahn family only")
    return float(expit(-x / SQRT2))


def coefficient_values(p: SLProblem, x: float) -> Tuple[float, float]:
    z = heteroclinic_value(p, x)
    try:
        return float(p.g(z)), float(p.h(z))
    except SingularEvaluationError as e:
        raise SingularEvaluationError(f"coefficient pole hit on the orbit at x={x}", {"x": x}) from e


def sup_nu(p: SLProblem) -> float:
    """Supremum of nu(x) over the line, i.e. of h over the closed segment [z-, z+]."""
    if p.family.family == ProblemFamily.HULTHEN:
        alpha1, alpha2, alpha3 = p.family.params
        if alpha2 / (2.0 * alpha3) < 1.0 / alpha1:
            return alpha2**2 / (4.0 * alpha3)
        return alpha2 / alpha1 - alpha3 / alpha1**2
    if p.family.family == ProblemFamily.ALLEN_CAHN:
        (alpha,) = p.family.params
        return (alpha**2 - alpha + 1.0) / 3.0

    settings = get_settings()
    lo, hi = sorted((p.z_minus, p.z_plus))
    grid = np.linspace(lo, hi, settings.sup_nu_grid)
    values = np.array([float(p.h(z)) for z in grid])
    i = int(np.argmax(values))
    best = float(values[i])
    if 0 < i < grid.size - 1:
        result = minimize_scalar(
            lambda z: -float(p.h(z)),
            bounds=(grid[i - 1], grid[i + 1]),
            method="bounded",
            options={"xatol": 1e-10},
        )
        best = max(best, -float(result.fun))
    return best
