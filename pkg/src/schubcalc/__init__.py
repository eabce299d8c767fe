"""Exact Schubert calculus, Hermitian symmetric space posets and integral-element checks."""

__version__ = "0.1.0"
