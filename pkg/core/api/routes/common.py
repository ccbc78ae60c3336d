"""Shared click options, option parsing and error mapping for every command."""

import logging
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import click
import orjson
from pydantic import ValidationError

from core.api.controllers import SpectralController
from core.api.schemas.cli_schemas import CliCommand, CliInvocation, OutputFormat, ProblemSource, parse_params
from core.services.error_handling import SpectralError

logger = logging.getLogger(__name__)


def converter(parse: Callable[[str], Any]) -> Callable:
    """click callback turning a parser's ValueError into a usage error."""

    def callback(ctx, param, value):
        if value is None:
            return None
        try:
            return parse(value)
        except ValueError as e:
            raise click.BadParameter(str(e), ctx=ctx, param=param) from e

    return callback


def problem_options(func: Callable) -> Callable:
    func = click.option("--problem", "problem_file", type=click.Path(dir_okay=False), help="Problem JSON file")(func)
    func = click.option(
        "--params", default=None, callback=converter(parse_params), help="Comma separated family parameters"
    )(func)
    func = click.option(
        "--family", type=click.Choice(["hulthen", "allen_cahn"]), default=None, help="Built-in problem family"
    )(func)
    return func


def output_options(default_format: OutputFormat = OutputFormat.JSON) -> Callable:
    def decorate(func: Callable) -> Callable:
        func = click.option(
            "--format",
            "fmt",
            type=click.Choice([f.value for f in OutputFormat]),
            default=default_format.value,
            show_default=True,
        )(func)
        func = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write output to a file")(func)
        return func

    return decorate


def build_invocation(
    command: CliCommand,
    out: Optional[str],
    fmt: str,
    options: Dict[str, Any],
    family: Optional[str] = None,
    params: Optional[tuple] = None,
    problem_file: Optional[str] = None,
    needs_problem: bool = True,
) -> CliInvocation:
    try:
        source = None
        if needs_problem:
            source = ProblemSource(family=family, params=params or (), problem_file=problem_file)
        return CliInvocation(command=command, source=source, out=out, format=OutputFormat(fmt), options=options)
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        raise click.UsageError(messages) from e


def emit(text: str, out: Optional[str]) -> None:
    if out is None:
        click.echo(text, nl=not text.endswith("\n"))
        return
    Path(out).write_text(text, encoding="utf-8")
    logger.info(f"Wrote {out}")


def execute(invocation: CliInvocation) -> None:
    """Run through the controller; domain errors exit with code 1 and JSON on stderr."""
    try:
        text = SpectralController.run(invocation)
    except SpectralError as e:
        logger.error(f"{invocation.command.value} failed: {e.code}: {e.message}")
        click.echo(orjson.dumps(e.to_dict(), default=str, option=orjson.OPT_SORT_KEYS).decode(), err=True)
        click.get_current_context().exit(1)
        return
    emit(text, invocation.out)

