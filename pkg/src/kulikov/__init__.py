"""Exact computations for Kulikov surfaces and their abelian covers."""

__version__ = "0.1.0"
