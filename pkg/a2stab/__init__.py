"""Stability conditions on the CY_n A2 category."""

__version__ = "0.1.0"
