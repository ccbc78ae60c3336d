import numpy as np
import pytest

from core.services.error_handling import IntegrationError, StepRejected, integration_retry
from core.services.helper.integration import solve_linear, transport_segment


def test_solve_linear_exponential():
    sol = solve_linear(lambda t, y: -y, (0.0, 2.0), [1.0])
    assert sol.y[0, -1] == pytest.approx(np.exp(-2.0), rel=1e-10)


def test_transport_constant_matrix_matches_expm():
    a = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
    out = transport_segment(lambda z: a, 0.0, np.pi / 2, np.eye(2, dtype=complex))
    # exp(A pi/2) is the quarter rotation
    assert np.allclose(out, [[0.0, 1.0], [-1.0, 0.0]], atol=1e-9)


def test_retry_tightens_then_succeeds():
    seen = []

    @integration_retry(attempts=3)
    def flaky(refinement=0):
        seen.append(refinement)
        if refinement < 2:
            raise StepRejected("step size underflow")
        return "ok"

    assert flaky() == "ok"
    assert seen == [0, 1, 2]


def test_retry_exhaustion_raises_integration_error():
    @integration_retry(attempts=2)
    def always_fails(refinement=0):
        raise StepRejected("required step size is less than spacing")

    with pytest.raises(IntegrationError) as exc:
        always_fails()
    assert exc.value.details["attempts"] == 2
    assert exc.value.to_dict()["code"] == "integration"
