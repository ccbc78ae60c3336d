"""Core package: consolidated code modules."""


