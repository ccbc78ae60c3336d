import numpy as np
import pytest
from scipy.special import expit, hyp2f1

from core.models.eigenfunction import HGParams
from core.models.spectrum import Side
from core.services.asymptotics_service import edge_rates, endpoint_data
from core.services.eigenfunction_service import (
    build_eigenfunction,
    eigenfunction_profile,
    eval_eigenfunction,
    eval_eigenfunction_z,
    gauss_series,
    hypergeometric_reduction,
    nonpositive_integer,
    residual,
)
from core.services.error_handling import SeriesError
from core.services.frobenius_service import normalize_to_01inf, p_symbol
from core.services.problem_service import make_allen_cahn, make_hulthen
from tests.spectral_values import (
    HULTHEN_EIGENVALUES,
    allen_cahn_nontrivial,
    allen_cahn_second_mode,
    allen_cahn_translation_mode,
)

XS = np.linspace(-15.0, 15.0, 121)


def _max_relative_error(values, expected):
    values, expected = np.asarray(values), np.asarray(expected)
    return float(np.max(np.abs(values - expected) / np.abs(expected)))


@pytest.mark.parametrize("value, n", [(0.0, 0), (-3.0, 3), (-2.0 + 1e-12, 2), (1.0, None), (-1.5, None), (-2 + 1e-3j, None)])
def test_nonpositive_integer(value, n):
    assert nonpositive_integer(value, 1e-9) == n


def test_gauss_series_matches_scipy_inside_disc():
    h = HGParams(a=0.5, b=0.3, c=1.7)
    for zeta in (0.1, 0.4, -0.6, 0.85):
        assert gauss_series(h, zeta, 2000) == pytest.approx(hyp2f1(0.5, 0.3, 1.7, zeta), rel=1e-12)


def test_terminating_series_is_a_polynomial():
    h = HGParams(a=-2.0, b=1.3, c=2.5)
    for zeta in (0.5, 3.0, -7.0):
        expected = 1 + (-2 * 1.3 / 2.5) * zeta + (-2 * -1 * 1.3 * 2.3) / (2 * 2.5 * 3.5) * zeta**2
        assert gauss_series(h, zeta, 10) == pytest.approx(expected, rel=1e-13)
        assert gauss_series(h, zeta, 10) == pytest.approx(hyp2f1(-2.0, 1.3, 2.5, zeta), rel=1e-10)


def test_non_terminating_series_diverges_outside_disc():
    with pytest.raises(SeriesError):
        gauss_series(HGParams(a=0.5, b=0.3, c=1.7), 1.0, 100)


def test_pole_in_series():
    with pytest.raises(SeriesError):
        gauss_series(HGParams(a=-3.0, b=1.0, c=-1.0), 0.5, 10)


@pytest.mark.parametrize("index, degree", [(2, 0), (1, 1), (0, 2)])
def test_hulthen_reduction_degrees(hulthen, index, degree):
    lam = HULTHEN_EIGENVALUES[index]
    _, normalized = normalize_to_01inf(p_symbol(hulthen, lam))
    params = hypergeometric_reduction(normalized)
    assert params.b == pytest.approx(-degree, abs=1e-12)
    ef = build_eigenfunction(hulthen, lam)
    assert ef is not None
    assert ef.degree == degree


def test_no_eigenfunction_off_spectrum(hulthen):
    assert build_eigenfunction(hulthen, 1.0) is None
    assert build_eigenfunction(hulthen, -0.2) is None


@pytest.mark.parametrize("index", [0, 1, 2])
def test_hulthen_residual(hulthen, index):
    lam = HULTHEN_EIGENVALUES[index]
    ef = build_eigenfunction(hulthen, lam)
    assert residual(hulthen, lam, ef, np.linspace(-10.0, 10.0, 41)) < 1e-6


def test_hulthen_ground_state_closed_form(hulthen):
    # degree-zero branch: psi = gamma^r (1 - gamma)^r
    lam = HULTHEN_EIGENVALUES[2]
    r = np.sqrt(lam)
    ef = build_eigenfunction(hulthen, lam)
    expected = expit(XS) ** r * expit(-XS) ** r
    values = [eval_eigenfunction(ef, hulthen, x).real for x in XS]
    assert _max_relative_error(values, expected) < 1e-8


def test_allen_cahn_translation_mode_closed_form(allen_cahn):
    for alpha in (0.2, 0.5, 0.8):
        p = allen_cahn(alpha)
        ef = build_eigenfunction(p, 0.0)
        values = [eval_eigenfunction(ef, p, x) for x in XS]
        assert _max_relative_error(values, allen_cahn_translation_mode(XS)) < 1e-8


@pytest.mark.parametrize("alpha", [0.35, 0.5, 0.65])
def test_allen_cahn_second_mode_closed_form(allen_cahn, alpha):
    p = allen_cahn(alpha)
    lam = allen_cahn_nontrivial(alpha)
    ef = build_eigenfunction(p, lam)
    assert ef.degree == 1
    values = [eval_eigenfunction(ef, p, x) for x in XS]
    expected = allen_cahn_second_mode(alpha, XS)
    # the closed form changes sign at zeta = 1 - alpha; compare away from the node
    keep = np.abs(expected) > 1e-12 * np.max(np.abs(expected))
    assert _max_relative_error(np.asarray(values)[keep], expected[keep]) < 1e-8
    assert residual(p, lam, ef, np.linspace(-10.0, 10.0, 41)) < 1e-6


def test_off_orbit_evaluation_matches_on_orbit(hulthen):
    lam = HULTHEN_EIGENVALUES[1]
    ef = build_eigenfunction(hulthen, lam)
    z = 1.0 / (1.0 + np.exp(-0.4))
    assert eval_eigenfunction_z(ef, z) == pytest.approx(eval_eigenfunction(ef, hulthen, 0.4), rel=1e-12)


def test_profile_normalization(allen_cahn):
    p = allen_cahn(0.5)
    ef = build_eigenfunction(p, 0.0)
    samples = eigenfunction_profile(p, ef, np.linspace(-5.0, 5.0, 101), normalize=True)
    assert max(abs(v) for _, v in samples) == pytest.approx(1.0)
    raw = dict(eigenfunction_profile(p, ef, [0.0]))
    assert raw[0.0] == pytest.approx(0.25)


@pytest.mark.parametrize(
    "p, lam",
    [
        (make_hulthen(1.0, 10.0, 10.0), HULTHEN_EIGENVALUES[0]),
        (make_hulthen(1.0, 10.0, 10.0), HULTHEN_EIGENVALUES[2]),
        (make_allen_cahn(0.5), 0.0),
        (make_allen_cahn(0.35), allen_cahn_nontrivial(0.35)),
        (make_allen_cahn(0.6), allen_cahn_nontrivial(0.6)),
    ],
)
def test_tails_decay_at_the_edge_rates(p, lam):
    ef = build_eigenfunction(p, lam)
    d = endpoint_data(p)
    tail = np.linspace(15.0, 25.0, 41)

    right = np.log(np.abs([eval_eigenfunction(ef, p, x) for x in tail]))
    slope_plus = np.polyfit(tail, right, 1)[0]
    decaying_plus = edge_rates(d, lam, Side.PLUS)[1].real
    assert slope_plus == pytest.approx(decaying_plus, rel=0.02)

    left = np.log(np.abs([eval_eigenfunction(ef, p, x) for x in -tail]))
    slope_minus = np.polyfit(-tail, left, 1)[0]
    decaying_minus = edge_rates(d, lam, Side.MINUS)[0].real
    assert slope_minus == pytest.approx(decaying_minus, rel=0.02)
