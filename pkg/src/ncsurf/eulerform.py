"""Euler forms on numerical Grothendieck groups, as Gram matrices.

A Gram matrix is the matrix of the Euler form in the basis given by the
classes of an exceptional collection, hence unit upper-triangular. From it
we get the Serre automorphism ``s = M^-1 M^t`` (characterised by
``<x, s(y)> = <y, x>``) and the Coxeter matrix ``C = -s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import exactmat as em


class InvalidGramMatrix(ValueError):
    """Input is not unit upper-triangular."""


@dataclass(frozen=True)
class GramMatrix:
    """Unit upper-triangular integer matrix of an Euler form."""

    entries: em.IntMatrix

    def __post_init__(self):
        rows = self.entries
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InvalidGramMatrix("Gram matrix must be square and non-empty")
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                if not isinstance(x, int) or isinstance(x, bool):
                    raise InvalidGramMatrix(f"entry ({i + 1},{j + 1}) is not an integer: {x!r}")
                if i == j and x != 1:
                    raise InvalidGramMatrix(f"diagonal entry ({i + 1},{i + 1}) is {x}, expected 1")
                if i > j and x != 0:
                    raise InvalidGramMatrix(f"entry ({i + 1},{j + 1}) below the diagonal is {x}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "GramMatrix":
        return cls(tuple(tuple(int(x) if not isinstance(x, int) else x for x in r) for r in rows))

    @classmethod
    def from_upper(cls, n: int, upper: Sequence[int]) -> "GramMatrix":
        """Build from the strictly upper entries listed row by row."""
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
        it = iter(upper)
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = next(it)
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "GramMatrix":
        return cls(em.identity(n))

    @property
    def n(self) -> int:
        return len(self.entries)

    def upper(self) -> tuple[int, ...]:
        """Strictly upper-triangular entries, row-major."""
        n = self.n
        return tuple(self.entries[i][j] for i in range(n) for j in range(i + 1, n))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.entries)

    def max_abs(self) -> int:
        return max((abs(x) for x in self.upper()), default=0)

    def __str__(self) -> str:
        return format_matrix(self.entries)


def format_matrix(M: Sequence[Sequence[int]]) -> str:
    width = max(len(str(x)) for r in M for x in r)
    return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in M)


@dataclass(frozen=True)
class SerreReport:
    nondegenerate: bool
    unipotent: bool
    rank_s_minus_id: int
    required_rank: int

    @property
    def passes_surface_type(self) -> bool:
        return self.nondegenerate and self.unipotent and self.rank_s_minus_id == self.required_rank

    def __str__(self) -> str:
        yn = {True: "yes", False: "no"}
        return "\n".join(
            [
                f"nondegenerate: {yn[self.nondegenerate]}",
                f"unipotent: {yn[self.unipotent]}",
                f"rank(s - id): {self.rank_s_minus_id} (required {self.required_rank})",
                f"surface type: {yn[self.passes_surface_type]}",
            ]
        )


def serre_matrix(M: GramMatrix) -> em.IntMatrix:
    """The Serre automorphism ``s = M^-1 M^t``; satisfies ``M s = M^t``."""
    s = em.matmul(em.inverse(M.entries), em.transpose(M.entries))
    try:
        return em.to_int(s)
    except ValueError as exc:  # pragma: no cover - det(M) = 1 forbids this
        raise AssertionError("Serre matrix of a unimodular Gram matrix is not integral") from exc


def coxeter(M: GramMatrix) -> em.IntMatrix:
    """The Coxeter matrix ``C = -M^-1 M^t``."""
    return em.neg(serre_matrix(M))


def s_minus_id(M: GramMatrix) -> em.IntMatrix:
    return em.sub(serre_matrix(M), em.identity(M.n))


def check_surface_type(M: GramMatrix, required_rank: int = 2) -> SerreReport:
    """Check the surface-type axioms on the Serre automorphism.

    The axioms are tested on ``s = M^-1 M^t`` and not on the Coxeter matrix
    ``-s``: with ``-s`` even the projective plane fails unipotency.
    """
    nondegenerate = em.det(M.entries) != 0
    N = s_minus_id(M)
    return SerreReport(
        nondegenerate=nondegenerate,
        unipotent=em.is_nilpotent(N),
        rank_s_minus_id=em.rank(N),
        required_rank=required_rank,
    )
