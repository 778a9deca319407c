"""Exact expansions, L-value routes and positivity certificates for Habiro-ring q-series."""

__version__ = "0.1.0"
