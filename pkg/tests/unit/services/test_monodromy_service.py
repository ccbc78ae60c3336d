import cmath
import math

import numpy as np
import pytest

from core.models.frobenius import SingularPoint, SingularSource
from core.models.monodromy import ComplexPath
from core.models.numbers import Matrix2C, principal_angle
from core.services.eigenfunction_service import build_eigenfunction, eval_eigenfunction_z
from core.services.error_handling import InvalidParameterError, MonodromyGeometryError, UnsupportedEquationError
from core.services.frobenius_service import ordered_points, transformed_equation
from core.services.monodromy_service import (
    common_eigenvector_test,
    compute_monodromy,
    cycle_product,
    default_base,
    default_radius,
    fundamental_along_path,
    loop_path,
    monodromy_eigen_check,
    monodromy_matrix,
)
from core.services.problem_service import make_allen_cahn, make_hulthen
from tests.spectral_values import HULTHEN_EIGENVALUES, allen_cahn_nontrivial

pytestmark = pytest.mark.slow

IDENTITY = Matrix2C.identity()


def test_contractible_loop_gives_identity(hulthen):
    ode = transformed_equation(hulthen)
    square = ComplexPath(waypoints=(0.4 + 0.2j, 0.6 + 0.2j, 0.6 + 0.4j, 0.4 + 0.4j, 0.4 + 0.2j), closed=True)
    assert fundamental_along_path(ode, 0.7, square).distance(IDENTITY) < 1e-8


def test_path_there_and_back_cancels(hulthen):
    ode = transformed_equation(hulthen)
    path = ComplexPath(waypoints=(0.5, 0.5 + 0.5j, 2.0 + 0.5j))
    assert fundamental_along_path(ode, 0.7, path.then(path.reversed())).distance(IDENTITY) < 1e-8


def test_composition_of_paths(hulthen):
    ode = transformed_equation(hulthen)
    first = ComplexPath(waypoints=(0.5, 0.5 + 0.5j))
    second = ComplexPath(waypoints=(0.5 + 0.5j, 1.5 + 0.5j, 1.5 - 0.5j))
    joined = fundamental_along_path(ode, 0.3, first.then(second))
    composed = fundamental_along_path(ode, 0.3, second) @ fundamental_along_path(ode, 0.3, first)
    assert joined.distance(composed) < 1e-8


def test_clearance_violation(hulthen):
    ode = transformed_equation(hulthen)
    grazing = ComplexPath(waypoints=(0.5, 0.01j - 0.5))
    with pytest.raises(MonodromyGeometryError):
        fundamental_along_path(ode, 0.3, grazing)


def test_default_geometry_hulthen(hulthen):
    minus, plus, third = ordered_points(hulthen)
    base = default_base(hulthen)
    assert base == 0.5
    assert default_radius(hulthen, minus, base) == pytest.approx(0.4)
    # encloses 0 and 1 with a gap of 0.45
    assert default_radius(hulthen, third, base) == pytest.approx(0.95)


def test_default_base_avoids_real_third_point():
    p = make_hulthen(2.0, 3.0, 5.0)
    assert default_base(p) == pytest.approx(0.5 + 0.1j)


def test_loop_geometry_errors(hulthen):
    minus, _, _ = ordered_points(hulthen)
    with pytest.raises(MonodromyGeometryError):
        loop_path(hulthen, minus, 0.3, 0.4)
    with pytest.raises(MonodromyGeometryError):
        loop_path(hulthen, minus, 1.5, 0.99)


def test_loop_around_ordinary_point_is_trivial(hulthen):
    ordinary = SingularPoint(location=0.5 + 0.5j, source=SingularSource.POLE_OF_H)
    m = monodromy_matrix(hulthen, 0.7, ordinary, base=0.5, radius=0.2)
    assert m.distance(IDENTITY) < 1e-8


def test_local_monodromy_eigenvalues_at_source(hulthen):
    lam = HULTHEN_EIGENVALUES[2]
    minus, _, _ = ordered_points(hulthen)
    m = monodromy_matrix(hulthen, lam, minus, base=0.5, radius=0.4)
    rho = (math.sqrt(41.0) - 1) / 4
    expected = sorted([cmath.exp(2j * math.pi * rho), cmath.exp(-2j * math.pi * rho)], key=lambda w: w.imag)
    assert sorted(m.eigenvalues(), key=lambda w: w.imag) == pytest.approx(expected, abs=1e-6)
    # det M = exp(-2 pi i Res p)
    assert abs(m.det - 1.0) < 1e-7


@pytest.mark.parametrize("lam", [0.3, HULTHEN_EIGENVALUES[1], 1.1 + 0.4j])
def test_eigen_check_all_points(hulthen, lam):
    for point in ordered_points(hulthen):
        assert monodromy_eigen_check(hulthen, lam, point).matches


def test_log_case_translation_mode(allen_cahn):
    p = allen_cahn(0.5)
    _, plus, _ = ordered_points(p)
    m = monodromy_matrix(p, 0.0, plus)
    assert abs(m.trace - 2.0) < 1e-7
    assert abs(m.det - 1.0) < 1e-7
    assert monodromy_eigen_check(p, 0.0, plus).matches


def test_radius_independence(hulthen):
    minus, _, _ = ordered_points(hulthen)
    small = monodromy_matrix(hulthen, 0.9, minus, base=0.5, radius=0.3)
    large = monodromy_matrix(hulthen, 0.9, minus, base=0.5, radius=0.45)
    assert small.distance(large) < 1e-7


def test_common_eigenvector_cases():
    identity = IDENTITY
    diag = Matrix2C.from_array(np.diag([2.0, 3.0]))
    swap = Matrix2C.from_array(np.array([[0.0, 1.0], [1.0, 0.0]]))
    upper = Matrix2C.from_array(np.array([[2.0, 1.0], [0.0, 5.0]]))

    ok, vector, angle = common_eigenvector_test(identity, identity)
    assert ok and angle == 0.0
    ok, vector, angle = common_eigenvector_test(diag, upper)
    assert ok and abs(vector[1]) < 1e-12
    ok, vector, angle = common_eigenvector_test(diag, swap)
    assert not ok
    assert vector is None
    assert angle == pytest.approx(math.pi / 4)


def test_common_eigenvector_defective():
    jordan = Matrix2C.from_array(np.array([[1.0, 1.0], [0.0, 1.0]]))
    diag = Matrix2C.from_array(np.diag([2.0, 3.0]))
    ok, vector, _ = common_eigenvector_test(jordan, diag)
    assert ok
    assert abs(vector[1]) < 1e-12


def test_singular_matrix_rejected():
    zero = Matrix2C(a11=0, a12=0, a21=0, a22=0)
    with pytest.raises(InvalidParameterError):
        common_eigenvector_test(zero, IDENTITY)


def test_pipeline_at_and_off_eigenvalue(hulthen):
    assert compute_monodromy(hulthen, HULTHEN_EIGENVALUES[2]).triangularizable
    off = compute_monodromy(hulthen, 1.0)
    assert not off.triangularizable
    assert off.angle >= off.tol


@pytest.mark.parametrize("lam", [0.2, HULTHEN_EIGENVALUES[0], 0.8 - 0.3j])
def test_cycle_relation_hulthen(hulthen, lam):
    assert cycle_product(hulthen, lam).distance(IDENTITY) < 1e-7


@pytest.mark.parametrize("alpha, lam", [(0.3, 0.1), (0.5, 0.0), (0.65, -0.2 + 0.1j)])
def test_cycle_relation_allen_cahn(allen_cahn, alpha, lam):
    assert cycle_product(allen_cahn(alpha), lam).distance(IDENTITY) < 1e-7


def test_cycle_relation_needs_infinity():
    with pytest.raises(UnsupportedEquationError):
        cycle_product(make_hulthen(2.0, 3.0, 5.0), 0.2)


@pytest.mark.parametrize("family", ["hulthen", "allen_cahn"])
def test_cycle_relation_random_lambda(hulthen, allen_cahn, family):
    p = hulthen if family == "hulthen" else allen_cahn(0.4)
    rng = np.random.default_rng(11)
    for re, im in zip(rng.uniform(-0.5, 2.0, 5), rng.uniform(-0.5, 0.5, 5)):
        assert cycle_product(p, complex(re, im)).distance(IDENTITY) < 1e-7


@pytest.mark.parametrize("lam", HULTHEN_EIGENVALUES)
def test_infinity_loop_matches_exponents(hulthen, lam):
    _, _, infinity = ordered_points(hulthen)
    assert infinity.at_infinity
    check = monodromy_eigen_check(hulthen, lam, infinity)
    assert check.error < 1e-7


def test_infinity_loop_tight_radii_agree(hulthen):
    _, _, infinity = ordered_points(hulthen)
    tight = monodromy_matrix(hulthen, 0.9, infinity)
    wider = monodromy_matrix(hulthen, 0.9, infinity, radius=1.2)
    assert tight.distance(wider) < 1e-7


def _bounded_direction(ef, z, h=1e-3):
    values = [eval_eigenfunction_z(ef, z + k * h) for k in (-2, -1, 0, 1, 2)]
    slope = (values[0] - 8 * values[1] + 8 * values[3] - values[4]) / (12 * h)
    return np.array([values[2], slope])


@pytest.mark.parametrize(
    "p, lam",
    [
        (make_hulthen(1.0, 10.0, 10.0), HULTHEN_EIGENVALUES[0]),
        (make_hulthen(1.0, 10.0, 10.0), HULTHEN_EIGENVALUES[1]),
        (make_hulthen(1.0, 10.0, 10.0), HULTHEN_EIGENVALUES[2]),
        (make_allen_cahn(0.35), allen_cahn_nontrivial(0.35)),
    ],
)
def test_common_eigenvector_is_bounded_solution(p, lam):
    result = compute_monodromy(p, lam)
    assert result.triangularizable
    ef = build_eigenfunction(p, lam)
    assert ef is not None
    bounded = _bounded_direction(ef, result.base_point)
    assert principal_angle(np.array(result.common_eigenvector), bounded) < 1e-5
