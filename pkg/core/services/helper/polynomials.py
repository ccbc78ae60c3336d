"""
Polynomial and rational-function algebra on ascending coefficient lists.

Coefficients may be real or complex numpy arrays. Multiplicities of a root are
found by repeated synthetic division, which keeps the Laurent data needed for
indicial equations exact up to rounding.
"""

from typing import Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

ROOT_TOL = 1e-9


def as_coeffs(coeffs: Sequence) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    trimmed = P.polytrim(arr)
    return trimmed if trimmed.size else np.zeros(1, dtype=complex)


def is_zero(coeffs: Sequence) -> bool:
    return bool(np.all(np.asarray(coeffs) == 0))


def degree(coeffs: Sequence) -> int:
    arr = as_coeffs(coeffs)
    if is_zero(arr):
        return -1
    return arr.size - 1


def leading(coeffs: Sequence) -> complex:
    return complex(as_coeffs(coeffs)[-1])


def evaluate(coeffs: Sequence, z):
    return P.polyval(z, np.asarray(coeffs))


def derivative(coeffs: Sequence) -> np.ndarray:
    arr = np.asarray(coeffs)
    if arr.size <= 1:
        return np.zeros(1, dtype=arr.dtype)
    return P.polyder(arr)


def mul(*polys: Sequence) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for poly in polys:
        out = P.polymul(out, np.asarray(poly, dtype=complex))
    return out


def add(a: Sequence, b: Sequence) -> np.ndarray:
    return P.polyadd(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def roots(coeffs: Sequence) -> np.ndarray:
    arr = as_coeffs(coeffs)
    if degree(arr) < 1:
        return np.zeros(0, dtype=complex)
    return P.polyroots(arr)


def strip_root(coeffs: Sequence, z0: complex, tol: float = ROOT_TOL) -> Tuple[int, np.ndarray]:
    """Divide out (z - z0) as often as it divides; returns (multiplicity, quotient)."""
    current = as_coeffs(coeffs)
    if is_zero(current):
        raise ValueError("the zero polynomial has no finite multiplicity")
    multiplicity = 0
    while degree(current) >= 1:
        scale = max(1.0, float(np.max(np.abs(current))))
        if abs(evaluate(current, z0)) > tol * scale:
            break
        quotient, _ = P.polydiv(current, np.array([-z0, 1.0], dtype=complex))
        current = as_coeffs(quotient)
        multiplicity += 1
    return multiplicity, current


def order_at(num: Sequence, den: Sequence, z0: complex) -> int:
    """Order of num/den at z0: positive for a zero, negative for a pole."""
    if is_zero(as_coeffs(num)):
        return 10**6
    m_num, _ = strip_root(num, z0)
    m_den, _ = strip_root(den, z0)
    return m_num - m_den


def limit_scaled(num: Sequence, den: Sequence, z0: complex, power: int) -> complex:
    """lim_{z -> z0} (z - z0)**power * num(z)/den(z); raises if the limit is infinite."""
    if is_zero(as_coeffs(num)):
        return 0j
    m_num, q_num = strip_root(num, z0)
    m_den, q_den = strip_root(den, z0)
    excess = power + m_num - m_den
    if excess < 0:
        raise ZeroDivisionError(f"pole of order {-excess} remains at {z0}")
    if excess > 0:
        return 0j
    return complex(evaluate(q_num, z0) / evaluate(q_den, z0))


def order_at_infinity(num: Sequence, den: Sequence) -> int:
    """deg(den) - deg(num); the order of num/den at infinity in w = 1/z."""
    if is_zero(as_coeffs(num)):
        return 10**6
    return degree(den) - degree(num)


def limit_at_infinity(num: Sequence, den: Sequence, power: int) -> complex:
    """lim_{z -> oo} z**power * num(z)/den(z)."""
    if is_zero(as_coeffs(num)):
        return 0j
    excess = order_at_infinity(num, den) - power
    if excess < 0:
        raise ZeroDivisionError(f"growth of order {-excess} remains at infinity")
    if excess > 0:
        return 0j
    return leading(num) / leading(den)


def cluster(points: Sequence[complex], tol: float = 1e-6) -> list:
    """Merge numerically coincident points into their mean (repeated roots split under rounding)."""
    groups: list = []
    for z in points:
        z = complex(z)
        for group in groups:
            if abs(z - group[0]) <= tol:
                group.append(z)
                break
        else:
            groups.append([z])
    return [sum(group) / len(group) for group in groups]
