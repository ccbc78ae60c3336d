"""Adaptive integration of linear systems with solve_ivp, retried with tighter step control."""

import logging
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from core.config import get_settings
from core.services.error_handling import StepRejected, integration_retry

logger = logging.getLogger(__name__)


@integration_retry(attempts=get_settings().integrator_attempts)
def _solve(
    fun: Callable,
    t_span: Tuple[float, float],
    y0: np.ndarray,
    rtol: float,
    atol: float,
    dense: bool,
    refinement: int = 0,
):
    span = abs(t_span[1] - t_span[0])
    max_step = np.inf if refinement == 0 else span / (8.0 * 4.0**refinement)
    sol = solve_ivp(
        fun,
        t_span,
        y0,
        method="DOP853",
        rtol=rtol,
        atol=atol,
        max_step=max_step,
        dense_output=dense,
    )
    if not sol.success:
        raise StepRejected(sol.message)
    return sol


def solve_linear(
    fun: Callable,
    t_span: Tuple[float, float],
    y0: Sequence,
    rtol: Optional[float] = None,
    atol: Optional[float] = None,
    dense: bool = False,
):
    settings = get_settings()
    return _solve(
        fun,
        (float(t_span[0]), float(t_span[1])),
        np.asarray(y0),
        settings.integrator_rtol if rtol is None else rtol,
        settings.integrator_atol if atol is None else atol,
        dense,
    )


def transport_segment(
    matrix: Callable[[complex], np.ndarray],
    z_start: complex,
    z_end: complex,
    state: np.ndarray,
) -> np.ndarray:
    """Carry a 2x2 fundamental matrix along the straight segment z_start -> z_end."""
    dz = complex(z_end) - complex(z_start)

    def rhs(t, y):
        z = z_start + t * dz
        return (dz * matrix(z) @ y.reshape(2, 2)).ravel()

    sol = solve_linear(rhs, (0.0, 1.0), np.asarray(state, dtype=complex).ravel())
    return sol.y[:, -1].reshape(2, 2)
