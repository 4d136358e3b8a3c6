"""Quadratic algebras, their graded dimensions, and the rank-4 collection
built from a noncommutative plane plus a fat point.

A quadratic presentation has ``g`` generators in degree 1 and relations in
degree 2. Each relation is a ``g x g`` array ``r`` standing for
``sum r[u][v] x_u x_v``. The degree-``d`` part of the two-sided ideal is
spanned by the products ``m_left * r * m_right``; its dimension is an exact
rank on the ``g^d``-dimensional space of words.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .builders import gram_family, gram_family_blowup, gram_p2, gram_quadric, named  # noqa: F401
from .eulerform import GramMatrix

MODULAR_PRIME = (1 << 61) - 1
MAX_MONOMIALS = 3**7

Coefficient = Union[int, Fraction]


class ResourceBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadraticPresentation:
    num_generators: int
    relations: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        g = self.num_generators
        if g < 1:
            raise ValueError("need at least one generator")
        rels = tuple(tuple(tuple(Fraction(c) for c in row) for row in r) for r in self.relations)
        for k, r in enumerate(rels):
            if len(r) != g or any(len(row) != g for row in r):
                raise ValueError(f"relation {k} is not a {g}x{g} array")
            if all(c == 0 for row in r for c in row):
                raise ValueError(f"relation {k} is zero")
        object.__setattr__(self, "relations", rels)

    @classmethod
    def from_triples(cls, g: int, relations: Iterable[Iterable[tuple[int, int, Coefficient]]]) -> "QuadraticPresentation":
        """Build from relations given as ``(u, v, coefficient)`` triples."""
        rels = []
        for rel in relations:
            r = [[Fraction(0)] * g for _ in range(g)]
            for u, v, c in rel:
                if not (0 <= u < g and 0 <= v < g):
                    raise ValueError(f"generator index out of range in ({u}, {v}, {c})")
                r[u][v] += Fraction(c)
            rels.append(r)
        return cls(g, rels)

    def triples(self) -> list[list[tuple[int, int, Fraction]]]:
        g = self.num_generators
        return [[(u, v, r[u][v]) for u in range(g) for v in range(g) if r[u][v]] for r in self.relations]

    def with_relation(self, r: Sequence[Sequence[Coefficient]]) -> "QuadraticPresentation":
        return QuadraticPresentation(self.num_generators, self.relations + (tuple(map(tuple, r)),))


def commutative(g: int = 3) -> QuadraticPresentation:
    """The polynomial ring: relations x_u x_v - x_v x_u for u < v."""
    return QuadraticPresentation.from_triples(
        g, [[(u, v, 1), (v, u, -1)] for u in range(g) for v in range(u + 1, g)]
    )


def sklyanin(a: Coefficient, b: Coefficient, c: Coefficient) -> QuadraticPresentation:
    """Three-generator Sklyanin presentation, generators ``x, y, z`` = 0, 1, 2.

    Relations ``a xy + b yx + c z^2``, ``a yz + b zy + c x^2``,
    ``a zx + b xz + c y^2``.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == b == c == 0:
        raise ValueError("(a, b, c) must not be all zero")
    x, y, z = 0, 1, 2
    rels = []
    for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
        rels.append([(p, q, a), (q, p, b), (r, r, c)])
    return QuadraticPresentation.from_triples(3, rels)


def _ideal_rows(P: QuadraticPresentation, d: int) -> Iterable[dict[int, Fraction]]:
    g = P.num_generators
    triples = P.triples()
    for i in range(d - 1):
        left_size, right_size = g**i, g ** (d - 2 - i)
        for rel in triples:
            for left in range(left_size):
                for right in range(right_size):
                    row: dict[int, Fraction] = {}
                    for u, v, c in rel:
                        col = (left * g * g + u * g + v) * right_size + right
                        row[col] = row.get(col, 0) + c
                    yield row


class _Echelon:
    """Incremental sparse row echelon form over Q or over Z/p."""

    def __init__(self, prime: int | None = None):
        self.prime = prime
        self.pivots: dict[int, dict[int, object]] = {}

    def add(self, row: dict[int, object]) -> None:
        p = self.prime
        if p is not None:
            row = {k: v % p for k, v in row.items() if v % p}
        else:
            row = {k: v for k, v in row.items() if v}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                lead = row[c]
                if p is None:
                    self.pivots[c] = {k: v / lead for k, v in row.items()}
                else:
                    inv = pow(lead, -1, p)
                    self.pivots[c] = {k: v * inv % p for k, v in row.items()}
                return
            f = row[c]
            for k, v in piv.items():
                nv = row.get(k, 0) - f * v
                if p is not None:
                    nv %= p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _to_modular(row: dict[int, Fraction], p: int) -> dict[int, int]:
    out = {}
    for k, v in row.items():
        if v.denominator % p == 0:
            raise ZeroDivisionError(f"coefficient {v} is not defined modulo {p}")
        out[k] = v.numerator * pow(v.denominator, -1, p) % p
    return out


def graded_dims(
    P: QuadraticPresentation,
    max_degree: int,
    mode: str = "rational",
    prime: int = MODULAR_PRIME,
    max_monomials: int = MAX_MONOMIALS,
) -> tuple[int, ...]:
    """``dim A_0, ..., dim A_D`` of the quotient of the free algebra by the relations.

    ``mode="modular"`` computes the ranks over ``Z/prime`` instead. A rank
    mod p never exceeds the rational rank, so modular dimensions can only
    overcount; use it as a fast screen and confirm with ``"rational"``.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    if mode not in ("rational", "modular"):
        raise ValueError(f"unknown mode {mode!r}")
    g = P.num_generators
    if g**max_degree > max_monomials:
        raise ResourceBudgetError(
            f"degree {max_degree} needs {g**max_degree} monomials (budget {max_monomials})"
        )
    dims = []
    for d in range(max_degree + 1):
        ech = _Echelon(prime if mode == "modular" else None)
        for row in _ideal_rows(P, d):
            ech.add(_to_modular(row, prime) if mode == "modular" else row)
        dims.append(g**d - ech.rank)
    return tuple(dims)


# -- file format -------------------------------------------------------------


def _coef_to_json(c: Fraction) -> Union[int, str]:
    return c.numerator if c.denominator == 1 else str(c)


def presentation_to_json(P: QuadraticPresentation) -> str:
    doc = {
        "generators": P.num_generators,
        "relations": [[[u, v, _coef_to_json(c)] for u, v, c in rel] for rel in P.triples()],
    }
    return json.dumps(doc, indent=2)


def presentation_from_json(text: str) -> QuadraticPresentation:
    """Parse ``{"generators": g, "relations": [[[u, v, coef], ...], ...]}``.

    Coefficients are integers or strings such as ``"-3/2"``.
    """
    doc = json.loads(text)
    try:
        g = int(doc["generators"])
        rels = [[(int(u), int(v), Fraction(c)) for u, v, c in rel] for rel in doc["relations"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed presentation document: {exc}") from None
    return QuadraticPresentation.from_triples(g, rels)


# -- fat points and the extended collection ----------------------------------


@dataclass(frozen=True)
class FatPointSpec:
    automorphism_order: int

    def __post_init__(self):
        if self.automorphism_order < 1:
            raise ValueError("automorphism order must be positive")


def fat_point_multiplicity(spec: Union[FatPointSpec, int]) -> int:
    """Multiplicity s of the fat points when the automorphism has order n.

    ``s = n`` if 3 does not divide n, else ``n / 3``.
    """
    if not isinstance(spec, FatPointSpec):
        spec = FatPointSpec(spec)
    n = spec.automorphism_order
    return n if gcd(n, 3) == 1 else n // 3


def extended_gram(s: int, presentation: QuadraticPresentation | None = None) -> GramMatrix:
    """Gram matrix of ``(S_0, S_1, S_2, F)`` with F a fat point of multiplicity s.

    ``chi(S_i, S_j) = dim A_{j-i}`` (no higher Ext between the twists) and
    ``chi(S_i, F) = s`` (Hom is s-dimensional, higher Ext vanish). The
    degree 1 and 2 dimensions are computed from ``presentation``, by default
    the polynomial ring in three variables.
    """
    if s < 1:
        raise ValueError("multiplicity must be positive")
    P = commutative(3) if presentation is None else presentation
    dims = graded_dims(P, 2)
    if dims != (1, 3, 6):
        raise ValueError(f"presentation has dimensions {dims}, not those of a noncommutative plane")
    rows = [[0] * 4 for _ in range(4)]
    for i in range(3):
        for j in range(i, 3):
            rows[i][j] = dims[j - i]
        rows[i][3] = s
    rows[3][3] = 1
    M = GramMatrix.from_rows(rows)
    assert M == gram_family_blowup(s), "collection does not have Gram matrix B'_s"
    return M
