"""
Verification independent of the algebraic pipeline.

Shooting integrates the real-line system y' = [[0, 1], [lambda - nu(x), -mu(x)]] y
from both ends on the decaying modes and measures the normalized Wronskian of the
two solutions at x = 0. It vanishes exactly at eigenvalues, so its sign changes
bracket the real point spectrum.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from core.config import get_settings
from core.models.oracle import ShootReport, VerificationLevel, VerificationReport
from core.models.problem import SLProblem
from core.models.spectrum import Side, SpectrumTag
from core.services.asymptotics_service import classify_lambda, classify_spectrum, decay_condition, edge_rates, endpoint_data
from core.services.eigenfunction_service import build_eigenfunction, residual
from core.services.error_handling import DegenerateEdgeError, InvalidParameterError, OracleError, SpectralError
from core.services.helper.integration import solve_linear
from core.services.kimura_service import is_triangularizable
from core.services.monodromy_service import compute_monodromy
from core.services.problem_service import coefficient_values

logger = logging.getLogger(__name__)

RENORMALIZE_EVERY = 1.0


def _decaying_rates(p: SLProblem, lam: complex) -> Tuple[complex, complex]:
    """(kappa-, kappa+): the rate with Re > 0 at -oo and the rate with Re < 0 at +oo."""
    d = endpoint_data(p)
    lam = complex(lam)
    if not (decay_condition(d, lam, Side.MINUS) and decay_condition(d, lam, Side.PLUS)):
        raise OracleError(
            f"lambda={lam} has no decaying mode at one of the ends; the miss distance is undefined",
            {"lambda": str(lam)},
        )
    tol = get_settings().degenerate_edge_tol
    rates = {}
    for side in (Side.MINUS, Side.PLUS):
        first, second = edge_rates(d, lam, side)
        if abs(first - second) < tol:
            raise DegenerateEdgeError(f"edge rates coincide at the {side.value} end", {"lambda": str(lam)})
        rates[side] = first if side == Side.MINUS else second
    return rates[Side.MINUS], rates[Side.PLUS]


def default_length(p: SLProblem, lam: complex) -> float:
    settings = get_settings()
    k_minus, k_plus = _decaying_rates(p, lam)
    slowest = min(abs(k_minus.real), abs(k_plus.real))
    return min(settings.shoot_max_length, max(settings.shoot_min_length, settings.shoot_tail_exponent / slowest))


def _start_vector(kappa: complex) -> np.ndarray:
    v = np.array([1.0, kappa], dtype=complex)
    return v / np.linalg.norm(v)


def _integrate_decaying(p: SLProblem, lam: complex, start: float, state: np.ndarray, dense: bool):
    """Carry a decaying mode from x = start to x = 0, renormalizing every unit of x."""

    def rhs(x, y):
        mu, nu = coefficient_values(p, x)
        return [y[1], (lam - nu) * y[0] - mu * y[1]]

    direction = 1.0 if start < 0 else -1.0
    edges = np.arange(start, 0.0, direction * RENORMALIZE_EVERY).tolist() + [0.0]
    pieces = []
    log_scale = 0.0
    for a, b in zip(edges, edges[1:]):
        sol = solve_linear(rhs, (a, b), state, dense=dense)
        state = sol.y[:, -1]
        if dense:
            pieces.append((min(a, b), max(a, b), sol.sol, log_scale))
        norm = float(np.linalg.norm(state))
        log_scale += math.log(norm)
        state = state / norm
    return state, pieces, log_scale


def _sample(pieces, log_final: float, x: float) -> complex:
    for lo, hi, sol, log_scale in pieces:
        if lo <= x <= hi:
            return complex(sol(x)[0]) * math.exp(log_scale - log_final)
    return 0j


def shoot(
    p: SLProblem,
    lam: complex,
    L: Optional[float] = None,
    samples: Optional[Sequence[float]] = None,
) -> ShootReport:
    """
    Two-sided shooting at lambda.

    The decaying mode at -L and the decaying mode at +L are carried to x = 0.
    ``miss`` is their Wronskian there, divided by the norms of both state vectors.
    It is a complex number of modulus at most 1. It vanishes exactly when the two
    modes are parallel, which is the same lambda set where the mode decaying at -oo
    has no growing component at +L. Samples follow the left mode for x <= 0 and the
    rescaled right mode for x > 0.
    """
    lam = complex(lam)
    k_minus, k_plus = _decaying_rates(p, lam)
    L = default_length(p, lam) if L is None else float(L)
    if L <= 0:
        raise InvalidParameterError(f"truncation length must be positive, got {L}")
    dense = samples is not None

    left, left_pieces, left_log = _integrate_decaying(p, lam, -L, _start_vector(k_minus), dense)
    right, right_pieces, right_log = _integrate_decaying(p, lam, L, _start_vector(k_plus), dense)
    wronskian = left[0] * right[1] - left[1] * right[0]
    miss = complex(wronskian / (np.linalg.norm(left) * np.linalg.norm(right)))
    logger.debug(f"shoot lambda={lam} L={L:.4g}: miss={miss:.3e}")

    collected = None
    if dense:
        scale = left[0] / right[0] if abs(right[0]) > 0 else 0j
        collected = tuple(
            (float(x), _sample(left_pieces, left_log, x) if x <= 0 else scale * _sample(right_pieces, right_log, x))
            for x in samples
        )
    return ShootReport(lam=lam, L=L, miss=miss, solution_samples=collected)


def _decay_window(p: SLProblem, lam_min: float, lam_max: float, steps: int) -> np.ndarray:
    d = endpoint_data(p)
    grid = np.linspace(lam_min, lam_max, steps)
    keep = [x for x in grid if decay_condition(d, x, Side.MINUS) and decay_condition(d, x, Side.PLUS)]
    return np.array(keep)


def find_real_eigenvalues(p: SLProblem, lam_min: float, lam_max: float, steps: Optional[int] = None) -> List[float]:
    """Sign changes of Re(miss) on a uniform grid, refined by bracketing."""
    settings = get_settings()
    steps = settings.oracle_steps if steps is None else steps
    if steps < 50:
        raise InvalidParameterError(f"steps must be at least 50, got {steps}")
    if lam_min >= lam_max:
        return []

    grid = _decay_window(p, lam_min, lam_max, steps)
    if grid.size < 2:
        return []

    def indicator(x: float) -> float:
        return shoot(p, x).miss.real

    values = [indicator(x) for x in grid]
    found: List[float] = []
    for (a, fa), (b, fb) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if fa == 0.0:
            found.append(float(a))
        elif fa * fb < 0:
            found.append(float(brentq(indicator, a, b, xtol=settings.oracle_xtol)))
    if values and values[-1] == 0.0:
        found.append(float(grid[-1]))
    found = sorted(set(found))
    logger.info(f"Shooting found {len(found)} real eigenvalues for {p.label()} on [{lam_min}, {lam_max}]")
    return found


def _run_check(name: str, errors: Dict[str, str], func, *args, **kwargs):
    try:
        return func(*args, **kwargs)
    except SpectralError as e:
        logger.warning(f"verify: {name} check failed to run: {e.message}")
        errors[name] = e.message
        return None


def verify(
    p: SLProblem,
    lam: complex,
    tol: Optional[float] = None,
    level: VerificationLevel = VerificationLevel.FULL,
) -> VerificationReport:
    """
    Run every applicable check at lambda.

    The eigenfunction and shooting checks are sufficient for an eigenvalue; the
    classification, Kimura and monodromy checks are necessary. The report passes
    when the sufficient checks agree with each other, the necessary ones hold at an
    eigenvalue, and Kimura agrees with monodromy.
    """
    settings = get_settings()
    tol = settings.verify_tol if tol is None else tol
    lam = complex(lam)
    table = classify_lambda(endpoint_data(p), lam)
    errors: Dict[str, str] = {}

    if table.tag != SpectrumTag.DISCRETE_CANDIDATE:
        logger.info(f"verify lambda={lam}: {table.tag.value}, discrete checks skipped")
        return VerificationReport(
            lam=lam,
            tol=tol,
            level=level,
            classification=table.tag,
            refined=table.tag,
            boundary=table.boundary,
            verdicts={"classification": False},
            eigenvalue=False,
            passed=True,
        )

    refined = _run_check("classification", errors, classify_spectrum, p, lam, kimura_tol=tol)
    kimura = _run_check("kimura", errors, is_triangularizable, p, lam, tol)
    ef = _run_check("eigenfunction", errors, build_eigenfunction, p, lam, tol)
    res = None
    if ef is not None:
        res = _run_check("eigenfunction", errors, residual, p, lam, ef, np.linspace(-10.0, 10.0, 81))

    verdicts: Dict[str, bool] = {
        "classification": refined is not None and refined.tag == SpectrumTag.DISCRETE_CANDIDATE,
        "kimura": kimura is not None and kimura.triangularizable,
        "eigenfunction": ef is not None and res is not None and res < tol,
    }

    miss = angle = None
    if level == VerificationLevel.FULL:
        report = _run_check("shooting", errors, shoot, p, lam)
        miss = abs(report.miss) if report is not None else None
        verdicts["shooting"] = miss is not None and miss < tol
        monodromy = _run_check("monodromy", errors, compute_monodromy, p, lam, tol=tol)
        angle = monodromy.angle if monodromy is not None else None
        verdicts["monodromy"] = monodromy is not None and monodromy.triangularizable

    sufficient = [verdicts[name] for name in ("eigenfunction", "shooting") if name in verdicts]
    necessary = [verdicts[name] for name in ("classification", "kimura", "monodromy") if name in verdicts]
    eigenvalue = all(sufficient)
    passed = len(set(sufficient)) == 1 and (not eigenvalue or all(necessary))
    if "monodromy" in verdicts and "monodromy" not in errors:
        passed = passed and verdicts["monodromy"] == verdicts["kimura"]

    logger.info(f"verify lambda={lam} for {p.label()}: eigenvalue={eigenvalue}, passed={passed}")
    return VerificationReport(
        lam=lam,
        tol=tol,
        level=level,
        classification=table.tag,
        refined=refined.tag if refined is not None else table.tag,
        boundary=table.boundary,
        kimura=kimura,
        eigenfunction_built=ef is not None,
        residual=res,
        miss=miss,
        monodromy_angle=angle,
        verdicts=verdicts,
        errors=errors,
        eigenvalue=eigenvalue,
        passed=passed,
    )
