"""Golden values for the named matrices, runnable without pytest."""

from __future__ import annotations

from typing import Iterator

from .builders import gram_family, gram_family_blowup, gram_p2, gram_quadric
from .eulerform import GramMatrix, check_surface_type, coxeter
from .mutation import apply_word, parse_word
from .ncalgebra import extended_gram, fat_point_multiplicity

COXETER_P2 = ((-10, -6, -3), (15, 8, 3), (-6, -3, -1))

# the word sending B'_m to B_m, and the expected partial results
CHAIN_WORD = "e1 e3 s3 s1 s2 s3"


def chain_intermediates(m: int) -> list[tuple[str, GramMatrix]]:
    """Partial words of CHAIN_WORD applied to B'_m and the expected matrices.

    The printed value of entry (1,3) after ``s3 s1 s2 s3`` is -2m, but the
    following ``e3`` step only produces the printed next matrix from +2m,
    and +2m is what the mutation formula gives; we use +2m.
    """
    rows = [
        ("s3", ((1, 3, -5 * m, 6), (0, 1, -2 * m, 3), (0, 0, 1, -m), (0, 0, 0, 1))),
        ("s2 s3", ((1, m, 3, 6), (0, 1, 2 * m, 5 * m), (0, 0, 1, 3), (0, 0, 0, 1))),
        ("s1 s2 s3", ((1, -m, -m, -m), (0, 1, 3, 6), (0, 0, 1, 3), (0, 0, 0, 1))),
        ("s3 s1 s2 s3", ((1, -m, 2 * m, -m), (0, 1, -3, 3), (0, 0, 1, -3), (0, 0, 0, 1))),
        ("e3 s3 s1 s2 s3", ((1, -m, -2 * m, -m), (0, 1, 3, 3), (0, 0, 1, 3), (0, 0, 0, 1))),
        (CHAIN_WORD, gram_family(m).entries),
    ]
    return [(w, GramMatrix(M)) for w, M in rows]


def run_golden() -> Iterator[tuple[str, bool]]:
    yield "coxeter matrix of P2", coxeter(gram_p2()) == COXETER_P2
    yield "quadric is of surface type", check_surface_type(gram_quadric()).passes_surface_type
    yield "B_m and B'_m are of surface type, m <= 20", all(
        check_surface_type(gram_family(m)).passes_surface_type
        and check_surface_type(gram_family_blowup(m)).passes_surface_type
        for m in range(21)
    )
    yield "identity is not of surface type", not check_surface_type(GramMatrix.identity(4)).passes_surface_type
    ok = True
    for m in range(11):
        for text, expected in chain_intermediates(m):
            ok &= apply_word(gram_family_blowup(m), parse_word(text, 4)) == expected
    yield "mutation chain B'_m -> B_m, m <= 10", ok
    yield "fat point multiplicities n <= 12", [fat_point_multiplicity(n) for n in range(1, 13)] == [
        1, 2, 1, 4, 5, 2, 7, 8, 3, 10, 11, 4,
    ]
    yield "extended Gram matrix is B'_s, s <= 20", all(extended_gram(s) == gram_family_blowup(s) for s in range(1, 21))
