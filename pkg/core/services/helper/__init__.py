"""Numerical helpers shared by the services."""
