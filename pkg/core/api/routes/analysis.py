import click

from core.api.routes.common import build_invocation, converter, execute, output_options, problem_options
from core.api.schemas.cli_schemas import CliCommand, parse_lambda
from core.models.oracle import VerificationLevel


@click.command("analyze")
@problem_options
@click.option("--lambda", "lam", default=None, callback=converter(parse_lambda), help="Spectral parameter, a+bi")
@click.option("--psymbol", is_flag=True, help="Include the local exponent table")
@output_options()
def analyze(family, params, problem_file, lam, psymbol, out, fmt):
    """Endpoint asymptotics, singular points and the classification of lambda."""
    invocation = build_invocation(
        CliCommand.ANALYZE, out, fmt, {"lam": lam, "psymbol": psymbol}, family, params, problem_file
    )
    execute(invocation)


@click.command("monodromy")
@problem_options
@click.option("--lambda", "lam", required=True, callback=converter(parse_lambda))
@click.option("--base", default=None, callback=converter(parse_lambda), help="Base point of the loops")
@click.option("--radius", type=float, default=None, help="Loop radius around z- and z+")
@output_options()
def monodromy(family, params, problem_file, lam, base, radius, out, fmt):
    """Monodromy matrices around z- and z+ and the common-eigenvector verdict."""
    options = {"lam": lam, "base": base, "radius": radius}
    execute(build_invocation(CliCommand.MONODROMY, out, fmt, options, family, params, problem_file))


@click.command("verify")
@problem_options
@click.option("--lambda", "lam", required=True, callback=converter(parse_lambda))
@click.option("--tol", type=float, default=None, help="Agreement tolerance (settings: verify_tol)")
@click.option("--level", type=click.Choice([v.value for v in VerificationLevel]), default=VerificationLevel.FULL.value)
@output_options()
def verify(family, params, problem_file, lam, tol, level, out, fmt):
    """Cross-check lambda with every method and report the verdicts."""
    options = {"lam": lam, "tol": tol, "level": level}
    execute(build_invocation(CliCommand.VERIFY, out, fmt, options, family, params, problem_file))


commands = [analyze, monodromy, verify]
