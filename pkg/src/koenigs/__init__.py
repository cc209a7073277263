"""Symmetrization, polarization and harmonic measure for Koenigs domains."""

__version__ = "0.1.0"
