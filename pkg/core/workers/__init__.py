"""Workers package."""


