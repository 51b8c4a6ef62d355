"""Exact topological recursion for the Cauchy two-matrix model at genus zero."""

__version__ = "0.1.0"
