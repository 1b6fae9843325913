"""Exact-arithmetic generalized Weyl algebras and their deformations."""

__version__ = "0.1.0"
