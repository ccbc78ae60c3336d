"""
Behaviour of the real-line equation as x -> +-oo.

The constant-coefficient limits A_pm(lambda) = [[0, 1], [lambda - nu_pm, -mu_pm]]
have eigenvalues kappa solving s^2 + mu s - (lambda - nu) = 0. Whether a decaying
mode exists at each end decides if lambda can be a discrete eigenvalue, lies in
the continuous spectrum, or is excluded outright.
"""

import cmath
import logging
from typing import Optional, Tuple

from core.config import get_settings
from core.models.numbers import Matrix2C
from core.models.problem import AsymptoticData, SLProblem
from core.models.spectrum import (
    ConditionDiagnostic,
    DecayCase,
    Side,
    SideReport,
    SpectrumClass,
    SpectrumTag,
)

logger = logging.getLogger(__name__)


def endpoint_data(p: SLProblem) -> AsymptoticData:
    f_prime = p.f.derivative()
    return AsymptoticData(
        mu_minus=float(p.g(p.z_minus)),
        mu_plus=float(p.g(p.z_plus)),
        nu_minus=float(p.h(p.z_minus)),
        nu_plus=float(p.h(p.z_plus)),
        a_minus=1.0 / float(f_prime(p.z_minus)),
        a_plus=1.0 / float(f_prime(p.z_plus)),
    )


def side_values(d: AsymptoticData, side: Side) -> Tuple[float, float, float]:
    """(mu, nu, a) at one end."""
    if side == Side.MINUS:
        return d.mu_minus, d.nu_minus, d.a_minus
    return d.mu_plus, d.nu_plus, d.a_plus


def asymptotic_matrix(d: AsymptoticData, lam: complex, side: Side) -> Matrix2C:
    mu, nu, _ = side_values(d, side)
    return Matrix2C(a11=0, a12=1, a21=lam - nu, a22=-mu)


def _order(roots) -> Tuple[complex, complex]:
    return tuple(sorted(roots, key=lambda s: (-s.real, -s.imag)))


def edge_rates(d: AsymptoticData, lam: complex, side: Side) -> Tuple[complex, complex]:
    """Roots of s^2 + mu s - (lambda - nu) = 0, descending real part."""
    mu, nu, _ = side_values(d, side)
    root = cmath.sqrt(mu * mu + 4.0 * (lam - nu))
    return _order(((-mu + root) / 2.0, (-mu - root) / 2.0))


def decay_condition(d: AsymptoticData, lam: complex, side: Side) -> bool:
    mu, nu, _ = side_values(d, side)
    return cmath.sqrt(mu * mu + 4.0 * (complex(lam) - nu)).real > abs(mu)


def condition_diagnostic(d: AsymptoticData, lam: complex, side: Side) -> ConditionDiagnostic:
    """Evaluate the printed inequality 16 mu^2 (Re lambda - nu) + (Im lambda)^2 > 0 for comparison."""
    mu, nu, _ = side_values(d, side)
    lam = complex(lam)
    printed = 16.0 * mu * mu * (lam.real - nu) + lam.imag**2
    decays = decay_condition(d, lam, side)
    return ConditionDiagnostic(
        side=side,
        printed_value=printed,
        printed_holds=printed > 0,
        decay_holds=decays,
        agree=(printed > 0) == decays,
    )


def decay_case(d: AsymptoticData) -> DecayCase:
    mu_m, mu_p, nu_m, nu_p = d.mu_minus, d.mu_plus, d.nu_minus, d.nu_plus
    if mu_m == 0 and mu_p == 0:
        return DecayCase.I
    if mu_p == 0 and mu_m > 0:
        return DecayCase.II
    if mu_p < 0 and mu_m == 0:
        return DecayCase.III
    if mu_p > 0 and mu_m >= 0 and nu_m >= nu_p:
        return DecayCase.IV
    if mu_p <= 0 and mu_m < 0 and nu_p >= nu_m:
        return DecayCase.V
    return DecayCase.NONE


theorem2_case = decay_case


def _side_report(d: AsymptoticData, lam: complex, side: Side) -> SideReport:
    return SideReport(side=side, kappa_pair=edge_rates(d, lam, side), decay_ok=decay_condition(d, lam, side))


def classify_lambda(d: AsymptoticData, lam: complex, boundary_tol: Optional[float] = None) -> SpectrumClass:
    """
    Decision table on the edge rates.

    n_plus counts rates at +oo with Re < 0 (decaying forward), n_minus counts
    rates at -oo with Re > 0 (decaying backward). A zero real part within the
    boundary tolerance marks the region boundary.
    """
    tol = get_settings().boundary_tol if boundary_tol is None else boundary_tol
    lam = complex(lam)
    minus = _side_report(d, lam, Side.MINUS)
    plus = _side_report(d, lam, Side.PLUS)

    rates = minus.kappa_pair + plus.kappa_pair
    if any(abs(k.real) <= tol for k in rates):
        return SpectrumClass(tag=SpectrumTag.CONTINUOUS_SPECTRUM, minus=minus, plus=plus, boundary=True)

    n_plus = sum(1 for k in plus.kappa_pair if k.real < 0)
    n_minus = sum(1 for k in minus.kappa_pair if k.real > 0)
    if n_plus == 0 or n_minus == 0:
        tag = SpectrumTag.NOT_EIGENVALUE
    elif n_plus == 1 and n_minus == 1:
        tag = SpectrumTag.DISCRETE_CANDIDATE
    else:
        tag = SpectrumTag.CONTINUOUS_SPECTRUM
    return SpectrumClass(tag=tag, minus=minus, plus=plus)


def classify_spectrum(p: SLProblem, lam: complex, kimura_tol: Optional[float] = None) -> SpectrumClass:
    """
    classify_lambda refined by the necessary conditions for a discrete eigenvalue:
    a triangularizable monodromy (Kimura) and, for real lambda, lambda <= sup nu.
    """
    from core.services.kimura_service import is_triangularizable
    from core.services.problem_service import sup_nu

    base = classify_lambda(endpoint_data(p), lam)
    if base.tag != SpectrumTag.DISCRETE_CANDIDATE:
        return base
    lam = complex(lam)
    if lam.imag == 0 and lam.real > sup_nu(p):
        logger.debug(f"lambda={lam} exceeds sup nu for {p.label()}")
        return base.model_copy(update={"tag": SpectrumTag.NOT_EIGENVALUE, "reason": "above_sup_nu"})
    if not is_triangularizable(p, lam, tol=kimura_tol).triangularizable:
        return base.model_copy(update={"tag": SpectrumTag.NOT_EIGENVALUE, "reason": "not_triangularizable"})
    return base
