"""Pairs of ternary quadratic forms, quartic rings and the shapes of their lattices."""

__version__ = "0.1.0"
