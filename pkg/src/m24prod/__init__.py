"""Exact verification of twisted Siegel product expansions as products of
rescaled Borcherds products."""

__version__ = "0.1.0"
