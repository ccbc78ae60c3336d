import click

from core.api.routes.common import build_invocation, converter, execute, output_options, problem_options
from core.api.schemas.cli_schemas import CliCommand, OutputFormat, parse_grid, parse_params, parse_range


@click.command("sweep")
@click.option("--family", type=click.Choice(["hulthen", "allen_cahn"]), required=True)
@click.option("--params", default=None, callback=converter(parse_params), help="alpha1,alpha3 for hulthen")
@click.option("--range", "value_range", required=True, callback=converter(parse_range), help="nu_- or alpha range")
@click.option("--grid", type=int, default=None, help="Number of rows (settings: sweep_rows)")
@output_options(OutputFormat.CSV)
def sweep(family, params, value_range, grid, out, fmt):
    """Eigenvalue branches against a family parameter."""
    options = {"family": family, "params": params, "range": value_range, "grid": grid}
    execute(build_invocation(CliCommand.SWEEP, out, fmt, options, needs_problem=False))


@click.command("region")
@problem_options
@click.option("--re", "re_range", required=True, callback=converter(parse_range), help="lo:hi of Re(lambda)")
@click.option("--im", "im_range", required=True, callback=converter(parse_range), help="lo:hi of Im(lambda)")
@click.option("--grid", type=int, default=None, help="Resolution (settings: region_resolution)")
@output_options(OutputFormat.CSV)
def region(family, params, problem_file, re_range, im_range, grid, out, fmt):
    """Classification raster of the complex lambda plane."""
    options = {"re": re_range, "im": im_range, "grid": grid}
    execute(build_invocation(CliCommand.REGION, out, fmt, options, family, params, problem_file))


@click.command("profile")
@problem_options
@click.option("--x", "xs", default=None, callback=converter(parse_grid), help="lo:hi:step sample grid")
@output_options(OutputFormat.CSV)
def profile(family, params, problem_file, xs, out, fmt):
    """Heteroclinic orbit and coefficient shapes mu(x), nu(x)."""
    execute(build_invocation(CliCommand.PROFILE, out, fmt, {"xs": xs}, family, params, problem_file))


commands = [sweep, region, profile]
