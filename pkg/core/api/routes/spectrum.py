import click

from core.api.routes.common import build_invocation, converter, execute, output_options, problem_options
from core.api.schemas.cli_schemas import CliCommand, OutputFormat, parse_grid, parse_lambda, parse_range


@click.command("eigenvalues")
@problem_options
@click.option("--range", "lam_range", default=None, callback=converter(parse_range), help="lo:hi search window")
@click.option("--method", type=click.Choice(["closed", "scan"]), default="closed", show_default=True)
@click.option("--grid", type=int, default=None, help="Scan grid size (settings: scan_grid)")
@click.option("--cross-check", is_flag=True, help="Compare with an independent shooting search")
@click.option("--steps", type=int, default=None, help="Shooting grid size (settings: oracle_steps)")
@click.option("--tol", type=float, default=None, help="Shooting acceptance (settings: verify_tol)")
@click.option("--no-shoot", is_flag=True, help="Skip the shooting confirmation")
@click.option("--include-unverified", is_flag=True, help="List Kimura roots that fail the decay or bounded filters")
@output_options()
def eigenvalues(
    family, params, problem_file, lam_range, method, grid, cross_check, steps, tol, no_shoot, include_unverified, out, fmt
):
    """Real discrete eigenvalues from Kimura's criterion."""
    options = {
        "range": lam_range,
        "method": method,
        "grid": grid,
        "cross_check": cross_check,
        "steps": steps,
        "tol": tol,
        "no_shoot": no_shoot,
        "include_unverified": include_unverified,
    }
    execute(build_invocation(CliCommand.EIGENVALUES, out, fmt, options, family, params, problem_file))


@click.command("eigenfunction")
@problem_options
@click.option("--lambda", "lam", required=True, callback=converter(parse_lambda))
@click.option("--x", "xs", default=None, callback=converter(parse_grid), help="lo:hi:step sample grid")
@click.option("--normalize", is_flag=True, help="Scale to unit maximum modulus")
@output_options(OutputFormat.CSV)
def eigenfunction(family, params, problem_file, lam, xs, normalize, out, fmt):
    """Sample the closed-form eigenfunction on a grid."""
    options = {"lam": lam, "xs": xs, "normalize": normalize}
    execute(build_invocation(CliCommand.EIGENFUNCTION, out, fmt, options, family, params, problem_file))


commands = [eigenvalues, eigenfunction]
