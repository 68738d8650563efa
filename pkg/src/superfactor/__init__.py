"""Factorization-method symmetries of the 3D oscillator and Kepler-Coulomb problems."""

__version__ = "0.1.0"
