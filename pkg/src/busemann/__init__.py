"""Numerical geometry of quasihyperbolic planes and checks of the G-space axioms."""

__version__ = "0.1.0"
