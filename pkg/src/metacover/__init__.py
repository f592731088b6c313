"""Exact computations for metacyclic and metabelian Galois covers."""

__version__ = "0.1.0"
