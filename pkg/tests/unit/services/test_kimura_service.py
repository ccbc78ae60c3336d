import numpy as np
import pytest

from core.services.error_handling import InvalidParameterError, UnsupportedEquationError
from core.services.frobenius_service import p_symbol
from core.services.kimura_service import (
    admissible_k,
    candidate_eigenvalues,
    default_window,
    family_closed_form,
    is_triangularizable,
    kimura_sums,
    nearest_odd,
    scan_eigenvalues,
)
from core.services.problem_service import make_allen_cahn, make_hulthen
from tests.spectral_values import HULTHEN_EIGENVALUES, HULTHEN_SPURIOUS, SQRT41, allen_cahn_nontrivial


@pytest.mark.parametrize("value, odd", [(2.9, 3), (3.0, 3), (-0.2, -1), (4.0, 5), (0.0, 1)])
def test_nearest_odd(value, odd):
    # an even integer is equidistant; the upper odd neighbour is reported
    assert nearest_odd(complex(value)) == odd


def test_kimura_sums_hulthen(hulthen):
    sums = kimura_sums(p_symbol(hulthen, 0.25))
    # r1 = r2 = 1 at lambda = 1/4
    assert sums == pytest.approx((2 + SQRT41, SQRT41, SQRT41, 2 - SQRT41))


def test_triangularizable_at_hulthen_eigenvalue(hulthen):
    report = is_triangularizable(hulthen, HULTHEN_EIGENVALUES[2])
    assert report.triangularizable
    assert report.best.index == 3
    assert report.best.odd == -1
    assert not is_triangularizable(hulthen, 1.0).triangularizable


def test_hulthen_candidates_match_exact_values(hulthen):
    found = candidate_eigenvalues(hulthen)
    assert [c.lam.real for c in found] == pytest.approx(HULTHEN_EIGENVALUES, abs=1e-9)
    assert [c.k for c in found] == [-3, -2, -1]
    assert all(c.sign_pattern == (1, 1, -1) for c in found)
    assert all(c.accepted for c in found)


def test_spurious_root_needs_include_unverified(hulthen):
    found = candidate_eigenvalues(hulthen, include_unverified=True)
    spurious = [c for c in found if abs(c.lam.real - HULTHEN_SPURIOUS) < 1e-9]
    assert len(spurious) == 1
    assert spurious[0].verified_decay
    assert not spurious[0].bounded_solution


def test_candidates_follow_family_formula(hulthen):
    for cand in candidate_eigenvalues(hulthen):
        assert family_closed_form(hulthen, cand.k) == pytest.approx(cand.lam.real, abs=1e-10)


def test_admissible_k_hulthen(hulthen):
    assert admissible_k(hulthen) == [-1, -2, -3]


def test_admissible_k_only_for_hulthen(allen_cahn):
    with pytest.raises(InvalidParameterError):
        admissible_k(allen_cahn(0.3))


@pytest.mark.parametrize("alpha", [0.35, 0.5, 0.65])
def test_allen_cahn_two_eigenvalues_inside_third_band(allen_cahn, alpha):
    found = [c.lam.real for c in candidate_eigenvalues(allen_cahn(alpha))]
    assert found == pytest.approx(sorted([allen_cahn_nontrivial(alpha), 0.0]), abs=1e-9)


@pytest.mark.parametrize("alpha", [0.2, 0.3, 0.8])
def test_allen_cahn_only_translation_mode_outside(allen_cahn, alpha):
    found = [c.lam.real for c in candidate_eigenvalues(allen_cahn(alpha))]
    assert found == pytest.approx([0.0], abs=1e-9)


def test_allen_cahn_family_formula(allen_cahn):
    p = allen_cahn(0.4)
    assert family_closed_form(p, 1) == pytest.approx(allen_cahn_nontrivial(0.4))
    assert family_closed_form(p, 2) == pytest.approx(0.0)
    assert family_closed_form(p, 0) is None


def test_unverified_decay_outside_window(allen_cahn):
    found = candidate_eigenvalues(allen_cahn(0.3), -0.5, 0.2, include_unverified=True)
    below = [c for c in found if abs(c.lam.real - allen_cahn_nontrivial(0.3)) < 1e-9]
    assert below and not below[0].verified_decay


def test_empty_window_returns_nothing():
    # sup nu attained at z-: no room for discrete spectrum
    p = make_hulthen(1.0, 30.0, 10.0)
    lo, hi = default_window(p)
    assert lo > hi
    assert candidate_eigenvalues(p) == []


def test_explicit_inverted_window_rejected(hulthen):
    with pytest.raises(InvalidParameterError):
        candidate_eigenvalues(hulthen, 2.0, 1.0)


def _random_hulthen_params(count):
    rng = np.random.default_rng(314)
    alpha1 = rng.uniform(0.5, 3.0, count)
    alpha2 = rng.uniform(1.0, 12.0, count)
    alpha3 = rng.uniform(1.0, 12.0, count)
    return [(float(a), float(b), float(c)) for a, b, c in zip(alpha1, alpha2, alpha3)]


def _random_allen_cahn_alphas(count):
    rng = np.random.default_rng(271)
    alphas = []
    while len(alphas) < count:
        alpha = float(rng.uniform(0.05, 0.95))
        # keep away from the thresholds where a branch enters at the window edge
        if min(abs(alpha - 1 / 3), abs(alpha - 2 / 3)) > 0.02:
            alphas.append(alpha)
    return alphas


def test_scan_matches_closed_form(hulthen, allen_cahn):
    for p in (hulthen, allen_cahn(0.35), allen_cahn(0.5)):
        closed = [c.lam.real for c in candidate_eigenvalues(p)]
        scanned = [c.lam.real for c in scan_eigenvalues(p)]
        assert scanned == pytest.approx(closed, abs=1e-8)


@pytest.mark.slow
@pytest.mark.parametrize("params", _random_hulthen_params(20))
def test_scan_matches_closed_form_random_hulthen(params):
    p = make_hulthen(*params)
    closed = [c.lam.real for c in candidate_eigenvalues(p)]
    scanned = [c.lam.real for c in scan_eigenvalues(p, grid_n=500)]
    assert scanned == pytest.approx(closed, abs=1e-8), params


@pytest.mark.slow
@pytest.mark.parametrize("alpha", _random_allen_cahn_alphas(20))
def test_scan_matches_closed_form_random_allen_cahn(alpha):
    p = make_allen_cahn(alpha)
    closed = [c.lam.real for c in candidate_eigenvalues(p)]
    scanned = [c.lam.real for c in scan_eigenvalues(p, grid_n=500)]
    assert scanned == pytest.approx(closed, abs=1e-8), alpha


def test_scan_grid_minimum(hulthen):
    with pytest.raises(InvalidParameterError):
        scan_eigenvalues(hulthen, grid_n=50)


def test_lambda_dependent_third_point(three_zero_problem):
    with pytest.raises(UnsupportedEquationError):
        candidate_eigenvalues(three_zero_problem)
    # the scan still applies
    assert isinstance(scan_eigenvalues(three_zero_problem, 0.01, 0.5, grid_n=200, include_unverified=True), list)
