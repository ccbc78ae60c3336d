"""
Test runner.
Run from the project root: python scripts/run_tests.py [--all]
"""

import sys
from pathlib import Path

import click
import pytest
from dotenv import load_dotenv

ROOT = Path(__file__).resolve().parent.parent

load_dotenv(override=True)


@click.command()
@click.option("--all", "run_all", is_flag=True, help="Include slow and integration tests")
@click.argument("pytest_args", nargs=-1)
def main(run_all, pytest_args):
    """Fast unit and CLI tests by default; --all adds monodromy, shooting and acceptance runs."""
    args = ["-q", str(ROOT / "tests")]
    if not run_all:
        args += ["-m", "not slow and not integration"]
    sys.exit(pytest.main([*args, *pytest_args]))


if __name__ == "__main__":
    main()
