"""The signed braid group action on Gram matrices.

Generators act by unimodular basis changes ``M -> P^t M P``:

* ``s<i>`` (sigma_i, left mutation of the pair at positions i, i+1): the new
  basis is ``(..., e_{i+1} - <e_i, e_{i+1}> e_i, e_i, ...)``, i.e. the class
  ``[L_E F] = [F] - chi(E, F) [E]`` followed by the swap.
* ``S<i>`` (sigma_i inverse, right mutation): ``(..., e_{i+1}, e_i - <e_i, e_{i+1}> e_{i+1}, ...)``.
* ``e<i>`` (epsilon_i, shift of the i-th object): negate the i-th basis vector.

Indices are 1-based. Words are written in composition order and applied
rightmost generator first, so ``"e1 e3 s3 s1 s2 s3"`` starts with ``s3``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Optional

from .eulerform import GramMatrix

SIGMA = "sigma"
SIGMA_INV = "sigma_inverse"
EPSILON = "epsilon"

_TOKEN = {SIGMA: "s", SIGMA_INV: "S", EPSILON: "e"}
_KIND = {v: k for k, v in _TOKEN.items()}
_TOKEN_RE = re.compile(r"([sSe])(\d+)\Z")


class WordParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (token {position})")
        self.position = position


class GeneratorIndexError(ValueError):
    pass


class RankMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class BraidGenerator:
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in _TOKEN:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def check_rank(self, n: int) -> None:
        top = n if self.kind == EPSILON else n - 1
        if not 1 <= self.index <= top:
            raise GeneratorIndexError(f"{self} is out of range for rank {n}")

    def inverse(self) -> "BraidGenerator":
        if self.kind == EPSILON:
            return self
        return BraidGenerator(SIGMA_INV if self.kind == SIGMA else SIGMA, self.index)

    def __str__(self) -> str:
        return f"{_TOKEN[self.kind]}{self.index}"


def sigma(i: int) -> BraidGenerator:
    return BraidGenerator(SIGMA, i)


def sigma_inv(i: int) -> BraidGenerator:
    return BraidGenerator(SIGMA_INV, i)


def epsilon(i: int) -> BraidGenerator:
    return BraidGenerator(EPSILON, i)


@dataclass(frozen=True)
class BraidWord:
    """Generators in written (composition) order; the last one acts first."""

    rank: int
    generators: tuple[BraidGenerator, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            g.check_rank(self.rank)

    def __len__(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        return " ".join(map(str, self.generators))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        """Composition: ``(u * v)`` applies v first, then u."""
        if self.rank != other.rank:
            raise RankMismatchError("cannot compose words of different rank")
        return BraidWord(self.rank, self.generators + other.generators)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.rank, tuple(g.inverse() for g in reversed(self.generators)))

    def reduced(self) -> "BraidWord":
        """Free reduction: cancel adjacent ``g g^-1`` pairs (including ``e_i e_i``)."""
        out: list[BraidGenerator] = []
        for g in self.generators:
            if out and out[-1] == g.inverse():
                out.pop()
            else:
                out.append(g)
        return BraidWord(self.rank, tuple(out))

    def suffixes(self) -> list["BraidWord"]:
        """The partial words in order of application: last generator, last two, ..."""
        gs = self.generators
        return [BraidWord(self.rank, gs[len(gs) - k :]) for k in range(1, len(gs) + 1)]


def parse_word(text: str, rank: int) -> BraidWord:
    gens = []
    for pos, tok in enumerate(text.split(), start=1):
        m = _TOKEN_RE.match(tok)
        if not m:
            raise WordParseError(f"cannot parse {tok!r}; expected s<k>, S<k> or e<k>", pos)
        g = BraidGenerator(_KIND[m.group(1)], int(m.group(2)))
        g.check_rank(rank)
        gens.append(g)
    return BraidWord(rank, tuple(gens))


def _act(rows: list[list[int]], kind: str, i: int) -> list[list[int]]:
    """Apply one generator to a mutable copy; ``i`` is 0-based."""
    n = len(rows)
    M = [list(r) for r in rows]
    if kind == EPSILON:
        for k in range(n):
            if k != i:
                M[i][k] = -M[i][k]
                M[k][i] = -M[k][i]
        return M
    j = i + 1
    a = M[i][j]
    if kind == SIGMA:
        # columns: new_i = col_j - a col_i, new_j = col_i; then the same on rows
        for r in M:
            x, y = r[i], r[j]
            r[i], r[j] = y - a * x, x
        x, y = M[i], M[j]
        M[i], M[j] = [q - a * p for p, q in zip(x, y)], x
    else:
        for r in M:
            x, y = r[i], r[j]
            r[i], r[j] = y, x - a * y
        x, y = M[i], M[j]
        M[i], M[j] = y, [p - a * q for p, q in zip(x, y)]
    return M


def apply_generator(M: GramMatrix, g: BraidGenerator) -> GramMatrix:
    g.check_rank(M.n)
    out = _act(M.entries, g.kind, g.index - 1)
    return GramMatrix(tuple(map(tuple, out)))


def apply_word(M: GramMatrix, w: BraidWord) -> GramMatrix:
    if w.rank != M.n:
        raise RankMismatchError(f"word of rank {w.rank} applied to a {M.n}x{M.n} matrix")
    rows = [list(r) for r in M.entries]
    for g in reversed(w.generators):
        rows = _act(rows, g.kind, g.index - 1)
    return GramMatrix(tuple(map(tuple, rows)))


def trace_word(M: GramMatrix, w: BraidWord) -> list[tuple[BraidWord, GramMatrix]]:
    """Every intermediate matrix, labelled by the partial word producing it."""
    if w.rank != M.n:
        raise RankMismatchError(f"word of rank {w.rank} applied to a {M.n}x{M.n} matrix")
    out = []
    cur = M
    for part in w.suffixes():
        cur = apply_generator(cur, part.generators[0])
        out.append((part, cur))
    return out


def random_gram(n: int, bound: int, rng: random.Random) -> GramMatrix:
    return GramMatrix.from_upper(n, [rng.randint(-bound, bound) for _ in range(n * (n - 1) // 2)])


def random_word(n: int, length: int, rng: random.Random) -> BraidWord:
    gens = []
    for _ in range(length):
        kind = rng.choice((SIGMA, SIGMA_INV, EPSILON))
        top = n if kind == EPSILON else n - 1
        gens.append(BraidGenerator(kind, rng.randint(1, top)))
    return BraidWord(n, tuple(gens))


def braid_relations(n: int) -> list[tuple[str, BraidWord, BraidWord]]:
    """All defining relations of the signed braid group, plus sigma * sigma^-1 = 1."""

    def w(*gs: BraidGenerator) -> BraidWord:
        return BraidWord(n, gs)

    rels = []
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append((f"s{i} s{j} = s{j} s{i}", w(sigma(i), sigma(j)), w(sigma(j), sigma(i))))
    for i in range(1, n - 1):
        rels.append(
            (
                f"s{i} s{i + 1} s{i} = s{i + 1} s{i} s{i + 1}",
                w(sigma(i), sigma(i + 1), sigma(i)),
                w(sigma(i + 1), sigma(i), sigma(i + 1)),
            )
        )
    for i in range(1, n + 1):
        rels.append((f"e{i} e{i} = 1", w(epsilon(i), epsilon(i)), w()))
        for j in range(i + 1, n + 1):
            rels.append((f"e{i} e{j} = e{j} e{i}", w(epsilon(i), epsilon(j)), w(epsilon(j), epsilon(i))))
    for i in range(1, n):
        rels.append((f"e{i} s{i} e{i + 1} = s{i}", w(epsilon(i), sigma(i), epsilon(i + 1)), w(sigma(i))))
        rels.append((f"s{i} S{i} = 1", w(sigma(i), sigma_inv(i)), w()))
        rels.append((f"S{i} s{i} = 1", w(sigma_inv(i), sigma(i)), w()))
    return rels


@dataclass
class RelationReport:
    n: int
    trials: int
    relations_checked: int
    passed: bool
    counterexample: Optional[tuple[str, GramMatrix]] = None

    def __str__(self) -> str:
        if self.passed:
            return f"all {self.relations_checked} relation checks passed (n={self.n}, trials={self.trials})"
        rel, M = self.counterexample
        return f"relation {rel} fails on\n{M}"


def verify_braid_relations(n: int, trials: int, entry_bound: int, seed: int) -> RelationReport:
    """Check every relation as an equality of actions on seeded random Gram matrices."""
    if n < 2:
        raise ValueError("need n >= 2")
    rng = random.Random(seed)
    rels = braid_relations(n)
    checked = 0
    for _ in range(trials):
        M = random_gram(n, entry_bound, rng)
        for name, lhs, rhs in rels:
            checked += 1
            if apply_word(M, lhs) != apply_word(M, rhs):
                return RelationReport(n, trials, checked, False, (name, M))
    return RelationReport(n, trials, checked, True)

