"""Exact-arithmetic toolkit for Coxeter elements, reflection factorizations,
curve words in punctured discs, and noncrossing partition posets."""

__version__ = "0.1.0"
