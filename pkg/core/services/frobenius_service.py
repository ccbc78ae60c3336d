"""
The complexified equation psi'' + p(z) psi' + q(z) psi = 0 obtained from z = gamma(x):

    p = (g + f') / f,    q = (h - lambda) / f^2.

Singular points are classified by the Fuchs order test (p has at most a simple
pole, q at most a double pole); infinity is handled through w = 1/z.
"""

import cmath
import logging
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from core.config import get_settings
from core.models.frobenius import (
    ComplexODE,
    ExponentPair,
    MobiusMap,
    PSymbol,
    SingularKind,
    SingularPoint,
    SingularSource,
)
from core.models.problem import SLProblem
from core.services.asymptotics_service import endpoint_data
from core.services.error_handling import UnsupportedEquationError
from core.services.helper import polynomials as poly

logger = logging.getLogger(__name__)

INTEGER_TOL = 1e-9


def _tuple(coeffs) -> Tuple[complex, ...]:
    return tuple(complex(c) for c in poly.as_coeffs(coeffs))


@lru_cache(maxsize=128)
def transformed_equation(p: SLProblem) -> ComplexODE:
    f = p.f.numerator
    f_prime = poly.derivative(f)
    g_num, g_den = p.g.numerator, p.g.denominator
    p_num = poly.add(g_num, poly.mul(f_prime, g_den))
    p_den = poly.mul(f, g_den)
    f_sq = poly.mul(f, f)
    return ComplexODE(
        problem=p,
        p_num=_tuple(p_num),
        p_den=_tuple(p_den),
        h_num=_tuple(p.h.numerator),
        h_den=_tuple(poly.mul(f_sq, p.h.denominator)),
        f_squared=_tuple(f_sq),
    )


def _q_parts(ode: ComplexODE):
    """q = h_num/h_den - lambda/f^2 as two rational pieces."""
    return (ode.h_num, ode.h_den), ((1.0,), ode.f_squared)


def _pole_order(num, den, z0: complex) -> int:
    return max(0, -poly.order_at(num, den, z0))


def _classify_finite(ode: ComplexODE, z0: complex) -> Optional[SingularKind]:
    p_order = _pole_order(ode.p_num, ode.p_den, z0)
    q_order = max(_pole_order(num, den, z0) for num, den in _q_parts(ode))
    if p_order == 0 and q_order == 0:
        return None
    return SingularKind.REGULAR if p_order <= 1 and q_order <= 2 else SingularKind.IRREGULAR


def _classify_infinity(ode: ComplexODE) -> Optional[SingularKind]:
    """None when infinity is an ordinary point: p = 2/z + O(1/z^2) and q = O(1/z^4)."""
    p_ord = poly.order_at_infinity(ode.p_num, ode.p_den)
    q_ord = min(poly.order_at_infinity(num, den) for num, den in _q_parts(ode))
    if p_ord < 1 or q_ord < 2:
        return SingularKind.IRREGULAR
    p_inf = poly.limit_at_infinity(ode.p_num, ode.p_den, 1)
    if abs(p_inf - 2.0) < INTEGER_TOL and q_ord >= 4:
        return None
    return SingularKind.REGULAR


@lru_cache(maxsize=128)
def _singularities(p: SLProblem) -> Tuple[SingularPoint, ...]:
    ode = transformed_equation(p)
    zeros_f = poly.roots(p.f.numerator)
    poles_g = poly.roots(p.g.denominator)
    poles_h = poly.roots(p.h.denominator)
    candidates = poly.cluster(list(zeros_f) + list(poles_g) + list(poles_h))

    points: List[SingularPoint] = []
    for z0 in candidates:
        z0 = _snap(z0)
        kind = _classify_finite(ode, z0)
        if kind is None:
            continue
        if any(abs(z0 - r) < 1e-6 for r in zeros_f):
            source = SingularSource.ZERO_OF_F
        elif any(abs(z0 - r) < 1e-6 for r in poles_g):
            source = SingularSource.POLE_OF_G
        else:
            source = SingularSource.POLE_OF_H
        points.append(SingularPoint(location=z0, kind=kind, source=source))

    kind_inf = _classify_infinity(ode)
    if kind_inf is not None:
        points.append(SingularPoint.infinity(kind_inf))
    return tuple(points)


def _snap(z: complex) -> complex:
    """Remove root-finder noise from real and integer-valued locations."""
    z = complex(z)
    re, im = z.real, z.imag
    if abs(im) < 1e-12 * max(1.0, abs(re)):
        im = 0.0
    if abs(re - round(re)) < 1e-12:
        re = float(round(re))
    return complex(re, im)


def singularities(p: SLProblem) -> List[SingularPoint]:
    return list(_singularities(p))


def _order_pair(first: complex, second: complex) -> Tuple[complex, complex]:
    return tuple(sorted((complex(first), complex(second)), key=lambda s: (-s.real, -s.imag)))


def _solve_monic_quadratic(b: complex, c: complex) -> Tuple[complex, complex]:
    """Roots of s^2 + b s + c = 0, plus-root first."""
    root = cmath.sqrt(b * b - 4.0 * c)
    return _order_pair((-b + root) / 2.0, (-b - root) / 2.0)


def indicial_coefficients(p: SLProblem, point: SingularPoint, lam: complex) -> Tuple[complex, complex]:
    """(b, c) of the indicial polynomial s^2 + b s + c at a regular singular point."""
    if point.kind == SingularKind.IRREGULAR:
        raise UnsupportedEquationError(
            f"irregular singular point at {point.describe()}", {"point": point.describe()}
        )
    lam = complex(lam)
    ode = transformed_equation(p)
    (hn, hd), (_, fsq) = _q_parts(ode)

    if point.at_infinity:
        p_inf = poly.limit_at_infinity(ode.p_num, ode.p_den, 1)
        q_inf = poly.limit_at_infinity(hn, hd, 2) - lam * poly.limit_at_infinity((1.0,), fsq, 2)
        return 1.0 - p_inf, q_inf

    z0 = point.location
    for endpoint, side_a, side_mu, side_nu in _endpoint_rows(p):
        if abs(z0 - endpoint) < 1e-12:
            return side_a * side_mu, side_a * side_a * (side_nu - lam)
    p0 = poly.limit_scaled(ode.p_num, ode.p_den, z0, 1)
    q0 = poly.limit_scaled(hn, hd, z0, 2) - lam * poly.limit_scaled((1.0,), fsq, z0, 2)
    return p0 - 1.0, q0


def _endpoint_rows(p: SLProblem):
    d = endpoint_data(p)
    return (
        (p.z_minus, d.a_minus, d.mu_minus, d.nu_minus),
        (p.z_plus, d.a_plus, d.mu_plus, d.nu_plus),
    )


def indicial_roots(p: SLProblem, point: SingularPoint, lam: complex) -> Tuple[complex, complex]:
    b, c = indicial_coefficients(p, point, lam)
    return _solve_monic_quadratic(b, c)


def _exponent_pair(p: SLProblem, point: SingularPoint, lam: complex) -> ExponentPair:
    plus, minus = indicial_roots(p, point, lam)
    diff = plus - minus
    integer = abs(diff.imag) < INTEGER_TOL and abs(diff.real - round(diff.real)) < INTEGER_TOL
    return ExponentPair(
        plus=plus,
        minus=minus,
        equal_exponents=abs(diff) < INTEGER_TOL,
        integer_difference=integer,
    )


def _locate(points: List[SingularPoint], z: complex) -> SingularPoint:
    for point in points:
        if not point.at_infinity and abs(point.location - z) < 1e-9:
            return point
    raise UnsupportedEquationError(f"endpoint {z} is not a singular point of the transformed equation")


def ordered_points(p: SLProblem) -> Tuple[SingularPoint, SingularPoint, SingularPoint]:
    """The three singular points ordered (z-, z+, third); raises outside the three-point class."""
    points = singularities(p)
    if len(points) != 3:
        raise UnsupportedEquationError(
            f"expected exactly three singular points on the sphere, found {len(points)}",
            {"points": [pt.describe() for pt in points]},
        )
    irregular = [pt.describe() for pt in points if pt.kind == SingularKind.IRREGULAR]
    if irregular:
        raise UnsupportedEquationError("irregular singular points present", {"points": irregular})
    minus = _locate(points, p.z_minus)
    plus = _locate(points, p.z_plus)
    (third,) = [pt for pt in points if pt is not minus and pt is not plus]
    return minus, plus, third


def p_symbol(p: SLProblem, lam: complex) -> PSymbol:
    points = ordered_points(p)
    exponents = tuple(_exponent_pair(p, point, lam) for point in points)
    ps = PSymbol(points=points, exponents=exponents, lam=complex(lam))
    fuchs = ps.fuchs_sum
    if abs(fuchs - 1.0) > get_settings().fuchs_tol:
        logger.warning(f"Fuchs relation off by {abs(fuchs - 1.0):.3e} for {p.label()} at lambda={lam}")
    return ps


def third_point_is_zero_of_f(p: SLProblem) -> bool:
    return ordered_points(p)[2].source == SingularSource.ZERO_OF_F


def local_exponent_table(ps: PSymbol) -> dict:
    return {
        "points": [pt.describe() for pt in ps.points],
        "rho_plus": [pair.plus for pair in ps.exponents],
        "rho_minus": [pair.minus for pair in ps.exponents],
        "differences": list(ps.differences),
    }


# Mobius normalization


def normalize_to_01inf(ps: PSymbol) -> Tuple[MobiusMap, PSymbol]:
    """Map (z-, z+, third) -> (0, 1, oo); local exponents are unchanged."""
    minus, plus, third = ps.points
    z_m = minus.location.real
    z_p = plus.location.real
    if third.at_infinity:
        mobius = MobiusMap(a=1.0, b=-z_m, c=0.0, d=z_p - z_m)
    else:
        t = third.location
        if abs(t.imag) > 0:
            raise UnsupportedEquationError(
                "third singular point is not real; real Mobius normalization unavailable",
                {"point": third.describe()},
            )
        t = t.real
        mobius = MobiusMap(a=z_p - t, b=-z_m * (z_p - t), c=z_p - z_m, d=-t * (z_p - z_m))
    if mobius.c == 0 and mobius.d != 1.0:
        mobius = MobiusMap(a=mobius.a / mobius.d, b=mobius.b / mobius.d, c=0.0, d=1.0)
    normalized = PSymbol(
        points=(
            SingularPoint(location=0j, kind=minus.kind, source=minus.source),
            SingularPoint(location=1 + 0j, kind=plus.kind, source=plus.source),
            SingularPoint.infinity(third.kind),
        ),
        exponents=ps.exponents,
        lam=ps.lam,
    )
    return mobius, normalized


def mobius_apply(m: MobiusMap, z: complex) -> complex:
    den = m.c * z + m.d
    if den == 0:
        return complex("inf")
    return (m.a * z + m.b) / den


def mobius_inverse(m: MobiusMap, zeta: complex) -> complex:
    return mobius_apply(MobiusMap(a=m.d, b=-m.b, c=-m.c, d=m.a), zeta)


def mobius_offsets(m: MobiusMap, z_minus: float, z_plus: float, from_minus: float, to_plus: float):
    """
    zeta and 1 - zeta at z = z- + from_minus = z+ - to_plus without subtractive cancellation.

    zeta = a (z - z-) / (c z + d) and 1 - zeta = (c - a)(z - z+) / (c z + d).
    """
    z = z_minus + from_minus if from_minus <= to_plus else z_plus - to_plus
    den = m.c * z + m.d
    zeta = m.a * from_minus / den
    one_minus = -(m.c - m.a) * to_plus / den
    return zeta, one_minus


def residue_of_p(p: SLProblem, z0: complex) -> complex:
    ode = transformed_equation(p)
    return poly.limit_scaled(ode.p_num, ode.p_den, z0, 1)


def companion_eigen_roots(b: complex, c: complex) -> np.ndarray:
    """Indicial roots from the companion-matrix eigenvalues, used as an independent check."""
    return np.linalg.eigvals(np.array([[0.0, -c], [1.0, -b]], dtype=complex))
