"""
Closed-form eigenfunctions through the hypergeometric reduction.

With the singular points sent to (0, 1, oo), peeling off zeta^{rho1+} (zeta - 1)^{rho2+}
leaves Gauss's equation with

    a = rho1+ + rho2+ + rho3+,   b = rho1+ + rho2+ + rho3-,   c = 1 + rho1+ - rho1-.

When b (or a) is a non-positive integer the series terminates and, provided both
peeled exponents have positive real part, the result decays at both ends of the
line: it is an eigenfunction.
"""

import cmath
import logging
from typing import Iterable, List, Optional, Tuple

import numpy as np

from core.config import get_settings
from core.models.eigenfunction import EigenFunction, HGParams
from core.models.frobenius import PSymbol
from core.models.problem import SLProblem
from core.services.error_handling import SeriesError, SingularEvaluationError
from core.services.frobenius_service import (
    mobius_apply,
    mobius_offsets,
    normalize_to_01inf,
    p_symbol,
)
from core.services.problem_service import coefficient_values, heteroclinic_offsets

logger = logging.getLogger(__name__)


def hypergeometric_reduction(ps_normalized: PSymbol) -> HGParams:
    first, second, third = ps_normalized.exponents
    shift = first.plus + second.plus
    return HGParams(a=shift + third.plus, b=shift + third.minus, c=1.0 + first.plus - first.minus)


def nonpositive_integer(value: complex, tol: float) -> Optional[int]:
    """n if value is within tol of -n for an integer n >= 0, else None."""
    value = complex(value)
    n = round(-value.real)
    if n >= 0 and abs(value + n) < tol:
        return int(n)
    return None


def gauss_series(h: HGParams, zeta: complex, n_max: int, tol: Optional[float] = None) -> complex:
    """Partial sum of F(a, b; c; zeta) built from the term ratio (a+j)(b+j) zeta / ((1+j)(c+j))."""
    settings = get_settings()
    tol = settings.kimura_tol if tol is None else tol
    a, b, c = complex(h.a), complex(h.b), complex(h.c)
    stop = [n for n in (nonpositive_integer(a, tol), nonpositive_integer(b, tol)) if n is not None]
    terminating = min(stop) if stop else None
    if terminating is None and abs(zeta) >= 1:
        raise SeriesError(f"non-terminating Gauss series diverges at |zeta|={abs(zeta):.6g}")

    limit = terminating if terminating is not None else n_max
    total = 1.0 + 0j
    term = 1.0 + 0j
    for j in range(limit):
        if abs(c + j) < tol:
            raise SeriesError(f"pole in the Gauss series: c + {j} = 0", {"c": str(c)})
        term *= (a + j) * (b + j) * zeta / ((1 + j) * (c + j))
        total += term
        if terminating is None and abs(term) < settings.series_rtol * abs(total):
            break
    return total


def _series_coefficients(a: complex, b: complex, c: complex, n: int, tol: float) -> Tuple[complex, ...]:
    coeffs = [1.0 + 0j]
    for j in range(n):
        if abs(c + j) < tol:
            raise SeriesError(f"pole in the Gauss series: c + {j} = 0", {"c": str(c)})
        coeffs.append(coeffs[-1] * (a + j) * (b + j) / ((1 + j) * (c + j)))
    return tuple(coeffs)


def build_eigenfunction(p: SLProblem, lam: complex, tol: Optional[float] = None) -> Optional[EigenFunction]:
    """The bounded hypergeometric solution at lambda, or None when none exists."""
    tol = get_settings().kimura_tol if tol is None else tol
    lam = complex(lam)
    mobius, normalized = normalize_to_01inf(p_symbol(p, lam))
    params = hypergeometric_reduction(normalized)
    exp0 = normalized.exponents[0].plus
    exp1 = normalized.exponents[1].plus

    if exp0.real <= 0 or exp1.real <= 0:
        logger.debug(f"lambda={lam}: peeled exponents {exp0}, {exp1} do not decay")
        return None

    n_b = nonpositive_integer(params.b, tol)
    n_a = nonpositive_integer(params.a, tol)
    if n_b is not None:
        a, b, n = complex(params.a), complex(-n_b), n_b
    elif n_a is not None:
        a, b, n = complex(-n_a), complex(params.b), n_a
    else:
        logger.debug(f"lambda={lam}: series does not terminate (a={params.a}, b={params.b})")
        return None

    c = complex(params.c)
    if nonpositive_integer(c, tol) is not None:
        logger.warning(f"lambda={lam}: c={c} is a non-positive integer, reduction rejected")
        return None

    coeffs = _series_coefficients(a, b, c, n, tol)
    logger.debug(f"Built eigenfunction at lambda={lam} with {len(coeffs)} series terms")
    return EigenFunction(
        lam=lam,
        mobius=mobius,
        exp0=exp0,
        exp1=exp1,
        coeffs=coeffs,
        params=HGParams(a=a, b=b, c=c),
    )


def _evaluate_in_zeta(ef: EigenFunction, zeta: complex, one_minus: complex) -> complex:
    if zeta == 0 or one_minus == 0:
        return 0j
    series = complex(np.polynomial.polynomial.polyval(zeta, np.array(ef.coeffs, dtype=complex)))
    return complex(zeta) ** ef.exp0 * complex(one_minus) ** ef.exp1 * series


def eval_eigenfunction(ef: EigenFunction, p: SLProblem, x: float) -> complex:
    from_minus, to_plus = heteroclinic_offsets(p, x)
    zeta, one_minus = mobius_offsets(ef.mobius, p.z_minus, p.z_plus, from_minus, to_plus)
    return _evaluate_in_zeta(ef, zeta, one_minus)


def eval_eigenfunction_z(ef: EigenFunction, z: complex) -> complex:
    """Off-orbit evaluation with principal branches; branch-dependent away from the segment."""
    zeta = mobius_apply(ef.mobius, z)
    if not cmath.isfinite(zeta):
        raise SingularEvaluationError(f"z={z} maps to infinity")
    return _evaluate_in_zeta(ef, zeta, 1.0 - zeta)


def residual(p: SLProblem, lam: complex, ef: EigenFunction, xs: Iterable[float], step: Optional[float] = None) -> float:
    """max |psi'' + mu psi' + nu psi - lambda psi| / max |psi| with 5-point central differences."""
    h = get_settings().residual_step if step is None else step
    lam = complex(lam)
    worst = 0.0
    peak = 0.0
    for x in xs:
        v = [eval_eigenfunction(ef, p, x + k * h) for k in (-2, -1, 0, 1, 2)]
        d1 = (v[0] - 8 * v[1] + 8 * v[3] - v[4]) / (12 * h)
        d2 = (-v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4]) / (12 * h * h)
        mu, nu = coefficient_values(p, x)
        worst = max(worst, abs(d2 + mu * d1 + nu * v[2] - lam * v[2]))
        peak = max(peak, abs(v[2]))
    if peak == 0.0:
        return float("inf")
    return worst / peak


def eigenfunction_profile(
    p: SLProblem, ef: EigenFunction, xs: Iterable[float], normalize: bool = False
) -> List[Tuple[float, complex]]:
    samples = [(float(x), eval_eigenfunction(ef, p, x)) for x in xs]
    if normalize and samples:
        peak = max(abs(v) for _, v in samples)
        if peak > 0:
            samples = [(x, v / peak) for x, v in samples]
    return samples
