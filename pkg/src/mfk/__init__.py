"""Exact matrix-factorization calculus: constructions, Hom homology, Clifford modules,
Knoerrer periodicity and the theta pairing."""

__version__ = "0.1.0"
