"""Exact and Monte Carlo calculus for zonotopes given by generator vectors."""

__version__ = "0.1.0"
