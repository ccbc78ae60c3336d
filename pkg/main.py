"""slgal: Galoisian spectra of Sturm–Liouville problems on the line."""

import logging
import sys

import click

from core.api.routes import analysis, reports, spectrum
from core.config import get_settings


@click.group(name="slgal")
@click.option("--log-level", default=None, help="Override SLGAL_LOG_LEVEL for this run")
def cli(log_level):
    """Spectra, eigenfunctions and monodromy of Sturm–Liouville problems on the real line."""
    level = (log_level or get_settings().log_level).upper()
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


for module in (analysis, spectrum, reports):
    for command in module.commands:
        cli.add_command(command)


if __name__ == "__main__":
    cli()
