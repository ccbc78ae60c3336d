import cmath

import numpy as np
import pytest
from pydantic import ValidationError

from core.models.monodromy import ComplexPath
from core.models.numbers import Matrix2C, parse_complex, principal_angle
from core.models.problem import RationalFn, SLProblem
from core.services.error_handling import SingularEvaluationError


@pytest.mark.parametrize(
    "text, expected",
    [("1.5", 1.5 + 0j), ("-0.3+0.2i", -0.3 + 0.2j), ("2i", 2j), (" 1 - 4i ", 1 - 4j), ("1e-3-2e-3i", 1e-3 - 2e-3j)],
)
def test_parse_complex_accepts_cli_literals(text, expected):
    assert parse_complex(text) == expected


@pytest.mark.parametrize("text", ["", "abc", "1+", "i+i"])
def test_parse_complex_rejects_garbage(text):
    with pytest.raises(ValueError):
        parse_complex(text)


def test_matrix_eigenvalues_trace_det():
    m = Matrix2C.from_array(np.array([[2.0, 1.0], [0.0, 3.0]]))
    assert m.trace == 5
    assert m.det == 6
    assert m.eigenvalues() == (3 + 0j, 2 + 0j)
    assert (m @ Matrix2C.identity()).distance(m) == 0.0


def test_matrix_rejects_non_finite_entries():
    with pytest.raises(ValidationError):
        Matrix2C(a11=complex("nan"), a12=0, a21=0, a22=1)


def test_matrix_json_dump_uses_re_im_pairs():
    dumped = Matrix2C(a11=1j, a12=0, a21=0, a22=1).model_dump(mode="json")
    assert dumped["a11"] == {"re": 0.0, "im": 1.0}


def test_principal_angle_ignores_phase():
    u = np.array([1.0, 1j])
    assert principal_angle(u, cmath.exp(0.7j) * u) == pytest.approx(0.0, abs=1e-15)
    assert principal_angle(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == pytest.approx(np.pi / 2)


def test_rational_fn_pole_raises_singular_evaluation():
    r = RationalFn(numerator=(1.0,), denominator=(-2.0, 1.0))
    assert r(0.0) == pytest.approx(-0.5)
    with pytest.raises(SingularEvaluationError):
        r(2.0)


def test_rational_fn_derivative_quotient_rule():
    r = RationalFn(numerator=(0.0, 1.0), denominator=(1.0, 1.0))  # z/(1+z)
    assert r.derivative()(1.0) == pytest.approx(0.25)


def test_zero_denominator_is_rejected():
    with pytest.raises(ValidationError):
        RationalFn(numerator=(1.0,), denominator=(0.0, 0.0))


def test_problem_requires_polynomial_f():
    with pytest.raises(ValidationError):
        SLProblem(
            f=RationalFn(numerator=(0.0, 1.0), denominator=(1.0, 1.0)),
            g=RationalFn.constant(0.0),
            h=RationalFn.constant(0.0),
            z_minus=0.0,
            z_plus=1.0,
            gamma_init=0.5,
        )


def test_path_reverse_and_join():
    path = ComplexPath(waypoints=(0.5, 0.5 + 0.5j, 2 + 0.5j))
    loop = path.then(path.reversed())
    assert loop.closed
    assert loop.waypoints[0] == loop.waypoints[-1] == 0.5
    with pytest.raises(ValueError):
        path.then(ComplexPath(waypoints=(3.0, 4.0)))


def test_path_rejects_repeated_waypoint():
    with pytest.raises(ValidationError):
        ComplexPath(waypoints=(0.5, 0.5, 1.0))
