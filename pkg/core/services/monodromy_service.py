"""
Numerical monodromy of the complexified equation.

Fundamental matrices are continued along piecewise linear paths. A loop around a
singular point is a connector from the base point, a counterclockwise polygon on a
circle, and the connector back. Infinity is circled clockwise on a circle just outside
the finite singularities, reached by a vertical connector, so that M_oo M_+ M_- = I
for three-point problems.
Two generators share an eigenvector exactly when the group they generate is
triangularizable.
"""

import cmath
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.config import get_settings
from core.models.frobenius import ComplexODE, SingularPoint
from core.models.monodromy import ComplexPath, EigenCheck, MonodromyResult
from core.models.numbers import Matrix2C, principal_angle
from core.models.problem import SLProblem
from core.services.error_handling import InvalidParameterError, MonodromyGeometryError, UnsupportedEquationError
from core.services.frobenius_service import indicial_roots, ordered_points, singularities, transformed_equation
from core.services.helper.integration import transport_segment

logger = logging.getLogger(__name__)

# eigenvalue splittings below this (relative) are rounding of a Jordan block
DEFECTIVE_SPLIT = 1e-4


def _segment_distance(a: complex, b: complex, s: complex) -> float:
    ab = b - a
    if ab == 0:
        return abs(s - a)
    t = ((s - a) * ab.conjugate()).real / abs(ab) ** 2
    t = min(1.0, max(0.0, t))
    return abs(s - (a + t * ab))


def _finite_singular_locations(p: SLProblem) -> List[complex]:
    return [pt.location for pt in singularities(p) if not pt.at_infinity]


def check_clearance(path: ComplexPath, obstacles: Sequence[complex], clearance: float) -> None:
    for a, b in zip(path.waypoints, path.waypoints[1:]):
        for s in obstacles:
            gap = _segment_distance(a, b, s)
            if gap < clearance:
                raise MonodromyGeometryError(
                    f"path segment {a} -> {b} passes within {gap:.3g} of the singular point {s}",
                    {"clearance": clearance, "singularity": str(s)},
                )


def fundamental_along_path(ode: ComplexODE, lam: complex, path: ComplexPath, clearance: Optional[float] = None) -> Matrix2C:
    """Y(end) for Y' = A(z) Y along the path with Y(start) = I."""
    clearance = get_settings().clearance if clearance is None else clearance
    check_clearance(path, _finite_singular_locations(ode.problem), clearance)
    lam = complex(lam)
    state = np.eye(2, dtype=complex)
    for a, b in zip(path.waypoints, path.waypoints[1:]):
        state = transport_segment(lambda z: ode.companion(z, lam), a, b, state)
    return Matrix2C.from_array(state)


def default_base(p: SLProblem) -> complex:
    mid = complex((p.z_minus + p.z_plus) / 2.0)
    third = ordered_points(p)[2]
    if not third.at_infinity and abs(third.location.imag) < get_settings().clearance:
        return mid + 0.1j
    return mid


def default_radius(p: SLProblem, around: SingularPoint, base: complex) -> float:
    settings = get_settings()
    finite = _finite_singular_locations(p)
    if around.at_infinity:
        # tightest circle that still clears every finite singularity
        center = complex((p.z_minus + p.z_plus) / 2.0)
        spacing = min(abs(a - b) for i, a in enumerate(finite) for b in finite[i + 1 :])
        gap = max(settings.infinity_margin * spacing, 2.0 * settings.clearance)
        outermost = max(abs(s - center) for s in finite)
        return max(outermost, abs(base - center)) + gap
    c = around.location
    others = [s for s in finite if abs(s - c) > 1e-12]
    nearest = min((abs(s - c) for s in others), default=math.inf)
    return min(settings.radius_fraction * abs(base - c), settings.radius_spacing * nearest)


def loop_path(p: SLProblem, around: SingularPoint, base: complex, radius: float) -> ComplexPath:
    settings = get_settings()
    n = settings.loop_waypoints
    base = complex(base)
    finite = _finite_singular_locations(p)

    if around.at_infinity:
        center = complex((p.z_minus + p.z_plus) / 2.0)
        if any(abs(s - center) > radius - settings.clearance for s in finite):
            raise MonodromyGeometryError(f"circle of radius {radius} does not enclose every finite singularity")
        dx = base.real - center.real
        if abs(base - center) >= radius or abs(dx) >= radius:
            raise MonodromyGeometryError("base point lies outside the circle around infinity")
        attach = complex(base.real, center.imag + math.sqrt(radius**2 - dx**2))
        theta0 = cmath.phase(attach - center)
        # clockwise: positive orientation around infinity
        ring = [center + radius * cmath.exp(1j * (theta0 - 2 * math.pi * k / n)) for k in range(1, n)]
    else:
        center = around.location
        offset = base - center
        if abs(offset) <= radius:
            raise MonodromyGeometryError(f"base point {base} lies inside the loop of radius {radius}")
        for s in finite:
            if abs(s - center) > 1e-12 and abs(s - center) < radius + settings.clearance:
                raise MonodromyGeometryError(
                    f"loop of radius {radius} around {around.describe()} comes too close to {s}"
                )
        attach = center + radius * offset / abs(offset)
        theta0 = cmath.phase(offset)
        ring = [center + radius * cmath.exp(1j * (theta0 + 2 * math.pi * k / n)) for k in range(1, n)]

    waypoints = (base, attach, *ring, attach, base)
    return ComplexPath(waypoints=waypoints, closed=True)


def monodromy_matrix(
    p: SLProblem,
    lam: complex,
    around: SingularPoint,
    base: Optional[complex] = None,
    radius: Optional[float] = None,
) -> Matrix2C:
    base = default_base(p) if base is None else complex(base)
    radius = default_radius(p, around, base) if radius is None else radius
    path = loop_path(p, around, base, radius)
    logger.debug(f"Monodromy around {around.describe()} for {p.label()} at lambda={lam}, r={radius:.3g}")
    return fundamental_along_path(transformed_equation(p), lam, path)


def _directions(m: np.ndarray, scale: float) -> Optional[List[np.ndarray]]:
    """Eigen-directions of a 2x2 matrix; None for a scalar matrix."""
    half = (m[0, 0] + m[1, 1]) / 2
    n = m - half * np.eye(2)
    if np.max(np.abs(n)) < 1e-9 * scale:
        return None
    disc = cmath.sqrt(half * half - (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]))
    if abs(disc) < DEFECTIVE_SPLIT * scale:
        first = np.array([n[0, 1], -n[0, 0]])
        second = np.array([-n[1, 1], n[1, 0]])
        return [first if np.linalg.norm(first) >= np.linalg.norm(second) else second]
    vectors = []
    for w in (half + disc, half - disc):
        first = np.array([m[0, 1], w - m[0, 0]])
        second = np.array([w - m[1, 1], m[1, 0]])
        vectors.append(first if np.linalg.norm(first) >= np.linalg.norm(second) else second)
    return vectors


def common_eigenvector_test(
    m1: Matrix2C, m2: Matrix2C, tol: Optional[float] = None
) -> Tuple[bool, Optional[Tuple[complex, complex]], float]:
    tol = get_settings().monodromy_tol if tol is None else tol
    a, b = m1.to_array(), m2.to_array()
    for m in (a, b):
        if abs(np.linalg.det(m)) < 1e-300:
            raise InvalidParameterError("monodromy matrices must be invertible")
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    dirs_a = _directions(a, scale)
    dirs_b = _directions(b, scale)
    if dirs_a is None and dirs_b is None:
        return True, (1 + 0j, 0j), 0.0
    if dirs_a is None or dirs_b is None:
        vector = (dirs_b if dirs_a is None else dirs_a)[0]
        vector = vector / np.linalg.norm(vector)
        return True, (complex(vector[0]), complex(vector[1])), 0.0

    best = (math.inf, None)
    for u in dirs_a:
        for v in dirs_b:
            angle = principal_angle(u, v)
            if angle < best[0]:
                best = (angle, u)
    angle, u = best
    if angle < tol:
        u = u / np.linalg.norm(u)
        return True, (complex(u[0]), complex(u[1])), angle
    return False, None, angle


def compute_monodromy(
    p: SLProblem,
    lam: complex,
    base: Optional[complex] = None,
    radius: Optional[float] = None,
    tol: Optional[float] = None,
) -> MonodromyResult:
    tol = get_settings().monodromy_tol if tol is None else tol
    base = default_base(p) if base is None else complex(base)
    minus, plus, _ = ordered_points(p)
    r_minus = default_radius(p, minus, base) if radius is None else radius
    r_plus = default_radius(p, plus, base) if radius is None else radius
    m_minus = monodromy_matrix(p, lam, minus, base, r_minus)
    m_plus = monodromy_matrix(p, lam, plus, base, r_plus)
    triangular, vector, angle = common_eigenvector_test(m_minus, m_plus, tol)
    logger.info(f"Monodromy at lambda={lam} for {p.label()}: angle={angle:.3e}, triangularizable={triangular}")
    return MonodromyResult(
        lam=complex(lam),
        base_point=base,
        radius_minus=r_minus,
        radius_plus=r_plus,
        m_minus=m_minus,
        m_plus=m_plus,
        common_eigenvector=vector,
        triangularizable=triangular,
        angle=angle,
        tol=tol,
    )


def _spectrum_error(m: Matrix2C, predicted: Sequence[complex]) -> float:
    """Eigenvalue sets compared through trace and determinant; stable for Jordan blocks."""
    trace = predicted[0] + predicted[1]
    det = predicted[0] * predicted[1]
    return max(abs(m.trace - trace), abs(m.det - det))


def monodromy_eigen_check(
    p: SLProblem,
    lam: complex,
    around: SingularPoint,
    tol: Optional[float] = None,
    base: Optional[complex] = None,
    radius: Optional[float] = None,
) -> EigenCheck:
    """Compare the numeric monodromy eigenvalues with {exp(2 pi i rho+), exp(2 pi i rho-)}."""
    tol = get_settings().monodromy_tol if tol is None else tol
    m = monodromy_matrix(p, lam, around, base, radius)
    numeric = m.eigenvalues()
    rho_plus, rho_minus = indicial_roots(p, around, lam)
    predicted = (cmath.exp(2j * math.pi * rho_plus), cmath.exp(2j * math.pi * rho_minus))
    error = _spectrum_error(m, predicted)
    return EigenCheck(
        point=around.describe(),
        numeric=numeric,
        predicted=predicted,
        error=error,
        matches=error < tol,
    )


def cycle_product(p: SLProblem, lam: complex, base: Optional[complex] = None) -> Matrix2C:
    """M_oo M_+ M_- for loops sharing the base point; identity for a three-point equation."""
    minus, plus, third = ordered_points(p)
    if not third.at_infinity:
        raise UnsupportedEquationError(
            "the cycle product is assembled for problems whose third singular point is infinity"
        )
    base = default_base(p) if base is None else complex(base)
    m_minus = monodromy_matrix(p, lam, minus, base)
    m_plus = monodromy_matrix(p, lam, plus, base)
    m_inf = monodromy_matrix(p, lam, third, base)
    return m_inf @ m_plus @ m_minus
