import logging

import pytest
from click.testing import CliRunner


@pytest.fixture(autouse=True)
def fresh_settings():
    from core.config import get_settings

    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def hulthen():
    from core.services.problem_service import make_hulthen

    return make_hulthen(1.0, 10.0, 10.0)


@pytest.fixture
def allen_cahn():
    from core.services.problem_service import make_allen_cahn

    return make_allen_cahn


# x^3 - x with a quadratic drift: the third singular point is the zero of f at -1
@pytest.fixture
def three_zero_problem():
    from core.services.problem_service import parse_problem

    return parse_problem(
        {
            "family": "custom",
            "f": [0.0, 1.0, 0.0, -1.0],
            "g": {"num": [0.0, 0.0, 1.0]},
            "h": {"num": [0.0, 2.0, -2.0]},
            "z_minus": 0.0,
            "z_plus": 1.0,
            "gamma_init": 0.5,
        }
    )


# Shared CliRunner for command tests
@pytest.fixture
def runner():
    yield CliRunner()
    # basicConfig(force=True) inside the CLI binds the root handler to the runner's stream
    for handler in logging.root.handlers[:]:
        if type(handler) is logging.StreamHandler:
            logging.root.removeHandler(handler)
