"""Homological and K-theoretic invariants of triangle-presentation lattices."""

__version__ = "0.1.0"
