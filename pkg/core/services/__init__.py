"""Services package."""


