"""Exact toolkit for Moy-Prasad quotients of twisted loop algebras:
Vinberg gradings, invariant maps, and twisted-Levi strata."""

__version__ = "0.1.0"
