"""Bounded enumeration of surface-type Gram matrices and orbit search.

The signed braid orbit of a Gram matrix is infinite in general, so every
search here is bounded: states with an entry above ``entry_cap_orbit`` are
pruned, and the number of states and the word length are budgeted. The
sign generators are quotiented out by storing each state in a sign-normal
form (the lexicographically smallest of its sign variants), which shrinks
the state space by up to ``2^(n-1)``.

Inequivalence is never claimed from a failed search. It is only reported
when an orbit invariant differs; otherwise the answer is ``inconclusive``.
"""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt
from typing import Optional, Sequence

import numpy as np

from . import exactmat as em
from .builders import gram_family, gram_p2, gram_quadric
from .eulerform import GramMatrix, check_surface_type, serre_matrix
from .mutation import (
    EPSILON,
    SIGMA,
    SIGMA_INV,
    BraidGenerator,
    BraidWord,
    RankMismatchError,
    _act,
    apply_word,
)

log = logging.getLogger(__name__)

Key = tuple[int, ...]


@dataclass(frozen=True)
class SearchParams:
    entry_bound_enumeration: int = 8
    entry_cap_orbit: int = 200
    max_orbit_size: int = 2_000_000
    max_word_length: int = 40

    def __post_init__(self):
        for name in ("entry_bound_enumeration", "entry_cap_orbit", "max_orbit_size", "max_word_length"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class Fingerprint:
    """Orbit invariants of a Gram matrix.

    ``charpoly`` and ``rank_s_minus_id`` are the coarse invariants; for
    surface-type matrices they are the same for everything of a given rank.
    The finer ones are unchanged by any unimodular basis change: the Smith
    form of ``s - id`` (``s`` moves by conjugation) and the congruence
    invariants of the Euler form restricted to the saturated lattice
    ``ker(s - id)``, on which it is symmetric.
    """

    charpoly: tuple[int, ...]
    rank_s_minus_id: int
    smith_s_minus_id: tuple[int, ...]
    kernel_form_smith: tuple[int, ...]
    kernel_form_signature: tuple[int, int, int]

    def to_dict(self) -> dict:
        return {
            "charpoly": list(self.charpoly),
            "rank_s_minus_id": self.rank_s_minus_id,
            "smith_s_minus_id": list(self.smith_s_minus_id),
            "kernel_form_smith": list(self.kernel_form_smith),
            "kernel_form_signature": list(self.kernel_form_signature),
        }

    def short(self) -> str:
        return (
            f"rk={self.rank_s_minus_id} snf(s-1)={list(self.smith_s_minus_id)} "
            f"ker={list(self.kernel_form_smith)} sig={list(self.kernel_form_signature)}"
        )


def kernel_form(M: GramMatrix) -> em.IntMatrix:
    """Gram matrix of the Euler form on a basis of the saturated kernel of s - id."""
    N = em.sub(serre_matrix(M), em.identity(M.n))
    K = em.integer_kernel(N)
    if not K:
        return ()
    KM = em.matmul(K, M.entries)
    return em.matmul(KM, em.transpose(K))


def fingerprint(M: GramMatrix) -> Fingerprint:
    s = serre_matrix(M)
    N = em.sub(s, em.identity(M.n))
    G = kernel_form(M)
    if G:
        ksmith = em.smith_invariants(G)
        ksig = em.descartes_signature(em.charpoly(G))
    else:
        ksmith, ksig = (), (0, 0, 0)
    return Fingerprint(
        charpoly=tuple(em.charpoly(s)),
        rank_s_minus_id=em.rank(N),
        smith_s_minus_id=em.smith_invariants(N),
        kernel_form_smith=ksmith,
        kernel_form_signature=ksig,
    )


# ---------------------------------------------------------------------------
# sign normal form and orbit exploration


def _sign_normalize(rows: Sequence[Sequence[int]]) -> tuple[Key, tuple[int, ...]]:
    """Lexicographically least sign variant of the upper entries.

    Greedy over the entries in row-major order with a parity union-find:
    at each entry either its sign is already forced by earlier choices, or
    the relative sign of its two basis vectors is still free and is chosen
    to make the entry negative. Returns the key and the 0-based indices of
    the basis vectors to negate.
    """
    n = len(rows)
    parent = list(range(n))
    parity = [0] * n  # parity relative to parent

    def find(x: int) -> tuple[int, int]:
        p = 0
        while parent[x] != x:
            p ^= parity[x]
            x = parent[x]
        return x, p

    for i in range(n):
        for j in range(i + 1, n):
            v = rows[i][j]
            if v == 0:
                continue
            ri, pi = find(i)
            rj, pj = find(j)
            if ri != rj:
                # want sign_i * sign_j = -sign(v)
                want = 1 if v > 0 else 0
                parent[rj] = ri
                parity[rj] = pi ^ pj ^ want
    flip = [find(k)[1] for k in range(n)]
    if sum(flip) * 2 > n or (sum(flip) * 2 == n and flip[0]):
        flip = [1 - f for f in flip]
    key = tuple(
        -rows[i][j] if flip[i] ^ flip[j] else rows[i][j] for i in range(n) for j in range(i + 1, n)
    )
    return key, tuple(k for k in range(n) if flip[k])


def _rows_from_key(n: int, key: Key) -> list[list[int]]:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    it = iter(key)
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = next(it)
    return rows


def _order(key: Key) -> tuple:
    return (max((abs(x) for x in key), default=0), key)


class _Tree:
    """BFS tree over sign-normal states with parent pointers."""

    def __init__(self, M: GramMatrix):
        self.n = M.n
        key, flips = _sign_normalize(M.entries)
        self.root = key
        self.root_flips = flips
        # key -> (parent key, generator kind, 0-based index, flips, depth)
        self.nodes: dict[Key, tuple] = {key: (None, None, None, flips, 0)}
        self.frontier: deque[Key] = deque([key])
        self.truncated = False  # some state sat at the word-length limit

    def __contains__(self, key: Key) -> bool:
        return key in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def expand_layer(self, cap: int, max_depth: int, budget: int) -> Optional[Key]:
        """Expand one full BFS layer. Returns None, or a new key if the budget is hit."""
        n = self.n
        nxt: deque[Key] = deque()
        while self.frontier:
            key = self.frontier.popleft()
            depth = self.nodes[key][4]
            if depth >= max_depth:
                self.truncated = True
                continue
            rows = _rows_from_key(n, key)
            for i in range(n - 1):
                for kind in (SIGMA, SIGMA_INV):
                    new, flips = _sign_normalize(_act(rows, kind, i))
                    if new in self.nodes:
                        continue
                    if any(abs(x) > cap for x in new):
                        continue
                    self.nodes[new] = (key, kind, i, flips, depth + 1)
                    nxt.append(new)
                    if len(self.nodes) > budget:
                        self.frontier = nxt
                        return new
        self.frontier = nxt
        return None

    def word_to(self, key: Key) -> BraidWord:
        """Word taking the tree's root matrix to the sign-normal matrix ``key``."""
        applied: list[BraidGenerator] = []  # application order, reversed at the end
        k = key
        while True:
            parent, kind, i, flips, _ = self.nodes[k]
            step = []
            if kind is not None:
                step.append(BraidGenerator(kind, i + 1))
            step.extend(BraidGenerator(EPSILON, f + 1) for f in flips)
            applied = step + applied
            if parent is None:
                break
            k = parent
        return BraidWord(self.n, tuple(reversed(applied)))


# ---------------------------------------------------------------------------
# canonical forms and equivalence


@dataclass(frozen=True)
class OrbitCertificate:
    representative: GramMatrix
    witness_word: BraidWord
    invariants_fingerprint: Fingerprint
    states_explored: int
    complete: bool  # False if the word-length budget cut the exploration short

    def replay(self, M: GramMatrix) -> bool:
        return apply_word(M, self.witness_word) == self.representative


class BudgetExhausted(RuntimeError):
    def __init__(self, message: str, best: Optional[OrbitCertificate] = None):
        super().__init__(message)
        self.best = best


def canonical_form(M: GramMatrix, p: SearchParams = SearchParams()) -> OrbitCertificate:
    """Minimal (max |entry|, then lexicographic) matrix in the bounded orbit of M."""
    tree = _Tree(M)
    best = tree.root
    fp = fingerprint(M)

    def cert(complete: bool) -> OrbitCertificate:
        rep = GramMatrix(tuple(map(tuple, _rows_from_key(M.n, best))))
        w = tree.word_to(best).reduced()
        return OrbitCertificate(rep, w, fp, len(tree), complete)

    while tree.frontier:
        hit = tree.expand_layer(p.entry_cap_orbit, p.max_word_length, p.max_orbit_size)
        best = min(tree.nodes, key=_order)
        if hit is not None:
            raise BudgetExhausted(f"orbit exceeds {p.max_orbit_size} states", cert(False))
    return cert(not tree.truncated)


@dataclass(frozen=True)
class Equivalence:
    status: str  # "equivalent", "distinguished", "inconclusive"
    word: Optional[BraidWord] = None
    fingerprints: tuple[Fingerprint, Fingerprint] = field(default=None, repr=False)

    def __bool__(self) -> bool:
        return self.status == "equivalent"


def equivalent(M1: GramMatrix, M2: GramMatrix, p: SearchParams = SearchParams()) -> Equivalence:
    """Search for a word sending M1 to M2.

    Returns ``distinguished`` when an orbit invariant differs, a replayed
    witness word when the bidirectional search meets, ``inconclusive`` when
    the budgets run out first.
    """
    if M1.n != M2.n:
        raise RankMismatchError("matrices of different rank")
    f1, f2 = fingerprint(M1), fingerprint(M2)
    if f1 != f2:
        return Equivalence("distinguished", None, (f1, f2))
    t1, t2 = _Tree(M1), _Tree(M2)
    meet = t1.root if t1.root in t2 else None
    half = (p.max_word_length + 1) // 2
    while meet is None and (t1.frontier or t2.frontier):
        # grow the side with the smaller frontier
        if t1.frontier and (not t2.frontier or len(t1.frontier) <= len(t2.frontier)):
            a, b = t1, t2
        else:
            a, b = t2, t1
        before = set(a.frontier)
        over = a.expand_layer(p.entry_cap_orbit, half, p.max_orbit_size - len(b))
        fresh = [k for k in a.frontier if k not in before]
        meet = next((k for k in fresh if k in b), None)
        if over is not None and meet is None:
            break
    if meet is None:
        return Equivalence("inconclusive", None, (f1, f2))
    word = (t2.word_to(meet).inverse() * t1.word_to(meet)).reduced()
    if apply_word(M1, word) != M2:  # pragma: no cover - would be a bug in the search
        raise AssertionError(f"witness {word} does not replay")
    return Equivalence("equivalent", word, (f1, f2))


# ---------------------------------------------------------------------------
# enumeration

_SCREEN_ROWS = 1 << 21


def _screen_safe(n: int, bound: int) -> bool:
    # crude bound on |s^2| entries; stays well inside int64
    inv = (bound + 1) ** (n - 1)
    s = n * inv * bound + 1
    return n * n * s * s < 2**62


def _screen_block(n: int, prefix: tuple[int, ...], bound: int) -> list[Key]:
    """Upper-entry tuples with the given prefix passing the trace screen.

    Unipotent s has characteristic polynomial (x-1)^n, forcing tr s = n and
    tr(s)^2 - tr(s^2) = n(n-1). Those are necessary conditions only; the
    exact axiom check runs on the survivors.
    """
    idx = [(i, j) for i in range(n) for j in range(i + 1, n)]
    free = len(idx) - len(prefix)
    dtype = np.int64 if _screen_safe(n, bound) else object
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    if free:
        grid = np.stack(np.meshgrid(*([r] * free), indexing="ij"), -1).reshape(-1, free)
    else:
        grid = np.zeros((1, 0), dtype=np.int64)
    pre = np.broadcast_to(np.array(prefix, dtype=np.int64), (grid.shape[0], len(prefix)))
    g = np.concatenate([pre, grid], axis=1).astype(dtype)
    N = g.shape[0]
    one = np.ones(N, dtype=dtype)
    zero = np.zeros(N, dtype=dtype)
    # entries as length-N vectors; both M and its inverse are unit upper-triangular
    M = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for c, (i, j) in enumerate(idx):
        M[i][j] = g[:, c]
    inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = M[i][i + 1] * inv[i + 1][j]
            for k in range(i + 2, j + 1):
                acc = acc + M[i][k] * inv[k][j]
            inv[i][j] = -acc
    # s = inv . M^t, so s[i][j] = sum over k >= max(i, j) of inv[i][k] * M[j][k]
    s = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            k0 = max(i, j)
            acc = inv[i][k0] * M[j][k0]
            for k in range(k0 + 1, n):
                acc = acc + inv[i][k] * M[j][k]
            s[i][j] = acc
    tr = sum(s[i][i] for i in range(n))
    tr2 = sum(s[i][j] * s[j][i] for i in range(n) for j in range(n))
    ok = np.asarray((tr == n) & (tr * tr - tr2 == n * (n - 1)), dtype=bool)
    return [tuple(int(x) for x in row) for row in g[ok]]


def _shard(args: tuple[int, tuple[int, ...], int, int]) -> list[Key]:
    n, prefix, bound, required_rank = args
    out = []
    for key in _screen_block(n, prefix, bound):
        M = GramMatrix.from_upper(n, key)
        if check_surface_type(M, required_rank).passes_surface_type:
            out.append(key)
    return out


def _prefixes(n: int, bound: int) -> list[tuple[int, ...]]:
    entries = n * (n - 1) // 2
    width = 2 * bound + 1
    k = 0
    while k < entries - 1 and width ** (entries - k) > _SCREEN_ROWS:
        k += 1
    prefixes: list[tuple[int, ...]] = [()]
    for _ in range(k):
        prefixes = [p + (v,) for p in prefixes for v in range(-bound, bound + 1)]
    return prefixes


def enumerate_solutions(
    n: int, bound: int, required_rank: int = 2, workers: int = 1
) -> list[GramMatrix]:
    """All unit upper-triangular n x n matrices with |entries| <= bound of surface type.

    Work is sharded by a prefix of the upper entries; shards are merged in
    prefix order so the output (lexicographic in the upper entries) does
    not depend on ``workers``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if n > 4:
        log.warning("enumerating %d free entries; this grows as (2*bound+1)^%d", n * (n - 1) // 2, n * (n - 1) // 2)
    jobs = [(n, pre, bound, required_rank) for pre in _prefixes(n, bound)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_shard, jobs))
    else:
        parts = [_shard(j) for j in jobs]
    keys = sorted(k for part in parts for k in part)
    return [GramMatrix.from_upper(n, k) for k in keys]


# ---------------------------------------------------------------------------
# classification against known representatives


class OrbitIndex:
    """Lazily grown bounded orbit of a target matrix, for membership lookups."""

    def __init__(self, target: GramMatrix, p: SearchParams):
        self.target = target
        self.p = p
        self.tree = _Tree(target)
        self.exhausted = False

    def word_from(self, M: GramMatrix) -> Optional[BraidWord]:
        """A word sending M to the target, if M lies in the explored orbit."""
        key, flips = _sign_normalize(M.entries)
        while key not in self.tree and self.tree.frontier and not self.exhausted:
            hit = self.tree.expand_layer(self.p.entry_cap_orbit, self.p.max_word_length, self.p.max_orbit_size)
            self.exhausted = hit is not None
        if key not in self.tree:
            return None
        to_key = self.tree.word_to(key)  # target -> normal form of M
        normalize = BraidWord(M.n, tuple(BraidGenerator(EPSILON, f + 1) for f in flips))
        word = (to_key.inverse() * normalize).reduced()
        if apply_word(M, word) != self.target:  # pragma: no cover
            raise AssertionError("orbit index produced a bad witness")
        return word


@dataclass
class Record:
    matrix: GramMatrix
    fingerprint: Fingerprint
    verdict: str  # "connected-to-<target>" or "unresolved"
    target: Optional[str] = None
    witness: Optional[BraidWord] = None

    def to_dict(self) -> dict:
        return {
            "entries": [list(r) for r in self.matrix.entries],
            "fingerprint": self.fingerprint.to_dict(),
            "verdict": self.verdict,
            "target": self.target,
            "witness_word": None if self.witness is None else str(self.witness),
        }


@dataclass
class ClassificationReport:
    n: int
    bound: int
    targets: dict[str, GramMatrix]
    records: list[Record]

    @property
    def unresolved(self) -> list[Record]:
        return [r for r in self.records if r.verdict == "unresolved"]

    def buckets(self) -> dict[Fingerprint, list[Record]]:
        out: dict[Fingerprint, list[Record]] = {}
        for r in self.records:
            out.setdefault(r.fingerprint, []).append(r)
        return out

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.records:
            out[r.verdict] = out.get(r.verdict, 0) + 1
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "bound": self.bound,
            "solutions": len(self.records),
            "unresolved": len(self.unresolved),
            "counts": self.counts(),
            "targets": {k: [list(r) for r in v.entries] for k, v in self.targets.items()},
            "buckets": [
                {"fingerprint": fp.to_dict(), "size": len(rs), "verdicts": sorted({r.verdict for r in rs})}
                for fp, rs in self.buckets().items()
            ],
            "records": [r.to_dict() for r in self.records],
        }

    def __str__(self) -> str:
        lines = [f"rank {self.n}, |entries| <= {self.bound}: {len(self.records)} surface-type solutions"]
        for fp, rs in self.buckets().items():
            verdicts = sorted({r.verdict for r in rs})
            lines.append(f"  bucket {fp.short()}: {len(rs)} matrices -> {', '.join(verdicts)}")
        for verdict, count in sorted(self.counts().items()):
            lines.append(f"  {verdict}: {count}")
        if self.unresolved:
            lines.append(f"  {len(self.unresolved)} unresolved; review by hand, these are not counterexamples")
        return "\n".join(lines)


def classify(
    n: int,
    bound: int,
    targets: dict[str, GramMatrix],
    p: SearchParams = SearchParams(),
    workers: int = 1,
    solutions: Optional[list[GramMatrix]] = None,
) -> ClassificationReport:
    """Enumerate solutions and connect each to a target with the same fingerprint."""
    if solutions is None:
        solutions = enumerate_solutions(n, bound, workers=workers)
    target_fps = {name: fingerprint(T) for name, T in targets.items()}
    indexes: dict[str, OrbitIndex] = {}
    records = []
    for M in solutions:
        fp = fingerprint(M)
        rec = Record(M, fp, "unresolved")
        for name, T in targets.items():
            if target_fps[name] != fp:
                continue
            index = indexes.setdefault(name, OrbitIndex(T, p))
            word = index.word_from(M)
            if word is None:
                res = equivalent(M, T, p)
                word = res.word if res else None
            if word is not None:
                rec.verdict, rec.target, rec.witness = f"connected-to-{name}", name, word
                break
        records.append(rec)
    return ClassificationReport(n, bound, dict(targets), records)


def family_parameter_cap(fps: Sequence[Fingerprint]) -> int:
    """Largest m for which B_m could share a fingerprint with one of ``fps``.

    The Euler form on ker(s - id) of B_m is rank one with value 9 - m^2
    (or 1 - (m/3)^2 when 3 divides m) on a primitive vector, so its absolute
    value is at least (m/3)^2 - 1.
    """
    q = 0
    for fp in fps:
        nonzero = [x for x in fp.kernel_form_smith if x]
        if len(nonzero) == 1:
            q = max(q, nonzero[0])
    return 3 * (isqrt(q + 1) + 1)


def rank4_targets(cap: int) -> dict[str, GramMatrix]:
    out = {"A": gram_quadric()}
    out.update({f"B_{m}": gram_family(m) for m in range(cap + 1)})
    return out


def classify_rank4(bound: int = 8, p: SearchParams = SearchParams(), workers: int = 1) -> ClassificationReport:
    """Connect every rank-4 solution within the bound to (A) or to some B_m."""
    solutions = enumerate_solutions(4, bound, workers=workers)
    cap = family_parameter_cap([fingerprint(M) for M in solutions])
    log.info("rank 4, bound %d: %d solutions, trying B_m for m <= %d", bound, len(solutions), cap)
    return classify(4, bound, rank4_targets(cap), p, solutions=solutions)


def classify_rank3(bound: int = 30, p: SearchParams = SearchParams(), workers: int = 1) -> ClassificationReport:
    """Connect every rank-3 solution within the bound to the projective plane."""
    return classify(3, bound, {"P2": gram_p2()}, p, workers=workers)
