# API Schemas

from .cli_schemas import CliCommand, CliInvocation, OutputFormat, ProblemSource
