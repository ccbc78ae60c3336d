"""Models package."""


