"""Exact computations with Euler forms of (noncommutative) surfaces.

Gram matrices of exceptional collections, the signed braid group action on
them, bounded classification of surface-type forms, graded dimensions of
quadratic algebras and divisor computations on F_1.
"""

__version__ = "0.1.0"

from .builders import gram_family, gram_family_blowup, gram_p2, gram_quadric, named
from .eulerform import GramMatrix, SerreReport, check_surface_type, coxeter, serre_matrix
from .mutation import BraidGenerator, BraidWord, apply_generator, apply_word, parse_word

__all__ = [
    "BraidGenerator",
    "BraidWord",
    "GramMatrix",
    "SerreReport",
    "apply_generator",
    "apply_word",
    "check_surface_type",
    "coxeter",
    "gram_family",
    "gram_family_blowup",
    "gram_p2",
    "gram_quadric",
    "named",
    "parse_word",
    "serre_matrix",
]
