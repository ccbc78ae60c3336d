"""
Kimura's criterion for the three-point Fuchsian class.

With exponent differences rho_j at the three singular points, the monodromy
(equivalently the differential Galois group) is triangularizable iff one of

    rho1 + rho2 + rho3,  -rho1 + rho2 + rho3,  rho1 - rho2 + rho3,  rho1 + rho2 - rho3

is an odd integer. At z-+ the differences are r_i(lambda) = |a_i| sqrt(mu_i^2 + 4(lambda - nu_i)),
while the third one is lambda-independent unless the third point is a zero of f.
Solving sigma1 r1 + sigma2 r2 + sigma3 rho3 = 2k + 1 in closed form yields every
candidate eigenvalue.
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from core.config import get_settings
from core.models.frobenius import PSymbol
from core.models.kimura import CandidateEigenvalue, KimuraBest, KimuraReport
from core.models.problem import ProblemFamily, SLProblem
from core.models.spectrum import Side
from core.services.asymptotics_service import decay_condition, endpoint_data
from core.services.eigenfunction_service import build_eigenfunction
from core.services.error_handling import InvalidParameterError, UnsupportedEquationError
from core.services.frobenius_service import p_symbol, third_point_is_zero_of_f
from core.services.helper import polynomials as poly
from core.services.problem_service import sup_nu

logger = logging.getLogger(__name__)

SIGN_PATTERNS: Tuple[Tuple[int, int, int], ...] = ((1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1))


def kimura_sums(ps: PSymbol) -> Tuple[complex, complex, complex, complex]:
    rho = ps.differences
    return tuple(s1 * rho[0] + s2 * rho[1] + s3 * rho[2] for s1, s2, s3 in SIGN_PATTERNS)


def nearest_odd(value: complex) -> int:
    return 2 * math.floor(value.real / 2.0) + 1


def _best(sums: Sequence[complex]) -> KimuraBest:
    scored = []
    for index, value in enumerate(sums):
        odd = nearest_odd(value)
        scored.append((abs(value - odd), index, odd))
    distance, index, odd = min(scored)
    return KimuraBest(index=index, odd=odd, distance=distance)


def is_triangularizable(p: SLProblem, lam: complex, tol: Optional[float] = None) -> KimuraReport:
    tol = get_settings().kimura_tol if tol is None else tol
    sums = kimura_sums(p_symbol(p, lam))
    best = _best(sums)
    triangular = best.distance < tol and abs(sums[best.index].imag) < tol
    return KimuraReport(lam=complex(lam), sums=sums, best=best, triangularizable=triangular, tol=tol)


# closed-form enumeration


def _endpoint_squares(p: SLProblem) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """r_i(lambda)^2 = A_i + B_i lambda at z- and z+."""
    d = endpoint_data(p)
    rows = []
    for a, mu, nu in ((d.a_minus, d.mu_minus, d.nu_minus), (d.a_plus, d.mu_plus, d.nu_plus)):
        rows.append((a * a * (mu * mu - 4.0 * nu), 4.0 * a * a))
    return rows[0], rows[1]


def _third_difference(p: SLProblem) -> complex:
    if third_point_is_zero_of_f(p):
        raise UnsupportedEquationError(
            "the third exponent difference depends on lambda; use scan_eigenvalues",
            {"problem": p.label()},
        )
    return p_symbol(p, 0.0).differences[2]


def _signed_sum(squares, rho3: complex, pattern, lam: float) -> complex:
    (a1, b1), (a2, b2) = squares
    r1 = np.sqrt(complex(a1 + b1 * lam))
    r2 = np.sqrt(complex(a2 + b2 * lam))
    s1, s2, s3 = pattern
    return s1 * r1 + s2 * r2 + s3 * rho3


def _squared_polynomial(squares, target: complex) -> np.ndarray:
    """Ascending coefficients in lambda of 4 r1^2 r2^2 - (target^2 - r1^2 - r2^2)^2."""
    (a1, b1), (a2, b2) = squares
    c = target * target - a1 - a2
    b = b1 + b2
    return np.array(
        [
            4.0 * a1 * a2 - c * c,
            4.0 * (a1 * b2 + a2 * b1) + 2.0 * c * b,
            4.0 * b1 * b2 - b * b,
        ],
        dtype=complex,
    )


def default_window(p: SLProblem) -> Tuple[float, float]:
    d = endpoint_data(p)
    return max(d.nu_minus, d.nu_plus) + get_settings().window_margin, sup_nu(p)


def _resolve_window(p: SLProblem, lam_min: Optional[float], lam_max: Optional[float]) -> Tuple[float, float]:
    lo_default, hi_default = default_window(p)
    lo = lo_default if lam_min is None else float(lam_min)
    hi = hi_default if lam_max is None else float(lam_max)
    if lo > hi and (lam_min is not None or lam_max is not None):
        raise InvalidParameterError(f"empty eigenvalue range [{lo}, {hi}]", {"lam_min": lo, "lam_max": hi})
    return lo, hi


def _odd_targets(values: np.ndarray) -> range:
    lo = math.floor(np.min(values)) - 2
    hi = math.ceil(np.max(values)) + 2
    first = lo if lo % 2 else lo + 1
    return range(first, hi + 1, 2)


def _make_candidate(p: SLProblem, lam: float, k: int, pattern, distance: float, tol: float) -> CandidateEigenvalue:
    d = endpoint_data(p)
    decays = decay_condition(d, lam, Side.MINUS) and decay_condition(d, lam, Side.PLUS)
    bounded = decays and build_eigenfunction(p, lam, tol=max(tol, 1e-8)) is not None
    return CandidateEigenvalue(
        lam=lam,
        k=k,
        sign_pattern=pattern,
        verified_decay=decays,
        bounded_solution=bounded,
        kimura_distance=distance,
    )


def _merge(candidates: List[CandidateEigenvalue], include_unverified: bool) -> List[CandidateEigenvalue]:
    dedupe = get_settings().dedupe_tol
    pool = candidates if include_unverified else [c for c in candidates if c.accepted]

    def preference(c: CandidateEigenvalue):
        return (not c.accepted, abs(c.k), SIGN_PATTERNS.index(tuple(c.sign_pattern)))

    merged: List[CandidateEigenvalue] = []
    for cand in sorted(pool, key=lambda c: c.lam.real):
        if merged and abs(cand.lam - merged[-1].lam) < dedupe:
            if preference(cand) < preference(merged[-1]):
                merged[-1] = cand
            continue
        merged.append(cand)
    return merged


def candidate_eigenvalues(
    p: SLProblem,
    lam_min: Optional[float] = None,
    lam_max: Optional[float] = None,
    include_unverified: bool = False,
) -> List[CandidateEigenvalue]:
    """Real lambda in [lam_min, lam_max] where a signed exponent-difference sum is odd."""
    settings = get_settings()
    rho3 = _third_difference(p)
    lo, hi = _resolve_window(p, lam_min, lam_max)
    if lo > hi:
        logger.info(f"Default window of {p.label()} is empty; no discrete spectrum")
        return []
    squares = _endpoint_squares(p)
    samples = np.linspace(lo, hi, 65)

    found: List[CandidateEigenvalue] = []
    for pattern in SIGN_PATTERNS:
        values = np.array([_signed_sum(squares, rho3, pattern, x).real for x in samples])
        for m in _odd_targets(values):
            target = m - pattern[2] * rho3
            coeffs = _squared_polynomial(squares, target)
            if np.all(np.abs(coeffs) < 1e-14 * max(1.0, abs(target) ** 4)):
                logger.warning(f"Squared Kimura equation vanishes identically for pattern {pattern}, m={m}")
                continue
            for root in poly.roots(coeffs):
                if abs(root.imag) > 1e-10 * max(1.0, abs(root.real)):
                    continue
                lam = float(root.real)
                if not (lo - settings.dedupe_tol <= lam <= hi + settings.dedupe_tol):
                    continue
                distance = abs(_signed_sum(squares, rho3, pattern, lam) - m)
                if distance > settings.backsub_tol * max(1.0, abs(m)):
                    logger.debug(f"Spurious squared root lambda={lam} for pattern {pattern}, m={m}")
                    continue
                found.append(_make_candidate(p, lam, (m - 1) // 2, pattern, distance, settings.kimura_tol))

    result = _merge(found, include_unverified)
    logger.info(f"Found {len(result)} Kimura candidates for {p.label()} on [{lo:.6g}, {hi:.6g}]")
    return result


# numeric scan


def _scan_function(p: SLProblem, index: int, m: int) -> Callable[[float], float]:
    def signed(lam: float) -> float:
        return kimura_sums(p_symbol(p, lam))[index].real - m

    return signed


def scan_eigenvalues(
    p: SLProblem,
    lam_min: Optional[float] = None,
    lam_max: Optional[float] = None,
    grid_n: Optional[int] = None,
    include_unverified: bool = False,
) -> List[CandidateEigenvalue]:
    """Grid search of the distance to the nearest odd integer, refined by root bracketing."""
    settings = get_settings()
    grid_n = settings.scan_grid if grid_n is None else grid_n
    if grid_n < 100:
        raise InvalidParameterError(f"grid_n must be at least 100, got {grid_n}")
    lo, hi = _resolve_window(p, lam_min, lam_max)
    if lo > hi:
        return []

    grid = np.linspace(lo, hi, grid_n)
    sums = np.array([kimura_sums(p_symbol(p, lam)) for lam in grid])
    found: List[CandidateEigenvalue] = []
    for index, pattern in enumerate(SIGN_PATTERNS):
        column = sums[:, index]
        usable = np.abs(column.imag) < settings.kimura_tol
        real = column.real
        if np.ptp(real) < settings.kimura_tol:
            # constant sum: either never odd or odd for every lambda, no isolated roots
            logger.debug(f"Kimura sum {pattern} is constant ({real[0]:.12g}) on the window")
            continue
        for i in range(grid_n - 1):
            if not (usable[i] and usable[i + 1]):
                continue
            a, b = real[i], real[i + 1]
            # every odd integer crossed between consecutive grid points
            lower, upper = sorted((a, b))
            m = math.ceil(lower)
            m = m if m % 2 else m + 1
            while m <= upper:
                signed = _scan_function(p, index, m)
                fa, fb = signed(grid[i]), signed(grid[i + 1])
                if fa == 0.0:
                    lam = float(grid[i])
                elif fb == 0.0:
                    lam = float(grid[i + 1])
                elif fa * fb < 0:
                    lam = float(brentq(signed, grid[i], grid[i + 1], xtol=settings.scan_xtol))
                else:
                    m += 2
                    continue
                distance = abs(kimura_sums(p_symbol(p, lam))[index] - m)
                found.append(_make_candidate(p, lam, (m - 1) // 2, pattern, distance, settings.kimura_tol))
                m += 2

    result = _merge(found, include_unverified)
    logger.info(f"Scan found {len(result)} candidates for {p.label()} on [{lo:.6g}, {hi:.6g}]")
    return result


# published per-family formulas


def family_closed_form(p: SLProblem, k: int) -> Optional[float]:
    """The printed eigenvalue formula for branch k of a built-in family."""
    if p.family.family == ProblemFamily.HULTHEN:
        alpha1, alpha2, alpha3 = p.family.params
        nu_minus = alpha2 / alpha1 - alpha3 / alpha1**2
        rho3 = math.sqrt(alpha1**2 + 4.0 * alpha3) / alpha1
        t = 2 * k + 1 + rho3
        if t == 0:
            return None
        return (t * t + 4.0 * nu_minus) ** 2 / (16.0 * t * t)
    if p.family.family == ProblemFamily.ALLEN_CAHN:
        (alpha,) = p.family.params
        if k == 0:
            return None
        return (k * k - 4) * (k + 1 - 2 * alpha) * (k - 1 + 2 * alpha) / (8.0 * k * k)
    return None


def admissible_k(p: SLProblem) -> List[int]:
    """Hulthén branches k in (-(rho3 + 1)/2, 0) whose eigenvalue lies inside the window."""
    if p.family.family != ProblemFamily.HULTHEN:
        raise InvalidParameterError("admissible_k is defined for the Hulthén family")
    alpha1, alpha2, alpha3 = p.family.params
    rho3 = math.sqrt(alpha1**2 + 4.0 * alpha3) / alpha1
    nu_minus = alpha2 / alpha1 - alpha3 / alpha1**2
    upper = sup_nu(p)
    accepted = []
    k = -1
    while k > -(rho3 + 1) / 2:
        lam = family_closed_form(p, k)
        if lam is not None and max(nu_minus, 0.0) < lam < upper:
            accepted.append(k)
        k -= 1
    return accepted
