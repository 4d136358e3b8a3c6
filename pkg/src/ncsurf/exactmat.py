"""Exact dense matrix arithmetic over the integers and the rationals.

Matrices are immutable tuples of rows. Integer matrices hold plain ``int``
entries, rational matrices hold :class:`fractions.Fraction` entries; the two
mix freely since ``Fraction`` and ``int`` interoperate. Nothing here ever
touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence, Union

Scalar = Union[int, Fraction]
IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]
Matrix = tuple[tuple[Scalar, ...], ...]


class SingularMatrixError(ArithmeticError):
    """Raised when inverting a matrix with zero determinant."""


def as_matrix(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    rows = tuple(tuple(r) for r in rows)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("expected a non-empty square matrix")
    return rows


def as_ratmatrix(rows: Sequence[Sequence[Scalar]]) -> RatMatrix:
    return tuple(tuple(Fraction(x) for x in r) for r in as_matrix(rows))


def to_int(M: Sequence[Sequence[Scalar]]) -> IntMatrix:
    """Convert to an integer matrix, refusing any entry with a denominator."""
    out = []
    for r in M:
        row = []
        for x in r:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integral entry {x}")
            row.append(x.numerator)
        out.append(tuple(row))
    return tuple(out)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(n))


def transpose(M: Sequence[Sequence[Scalar]]) -> Matrix:
    return tuple(zip(*M))


def matmul(A: Sequence[Sequence[Scalar]], B: Sequence[Sequence[Scalar]]) -> Matrix:
    Bt = tuple(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def add(A, B) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def sub(A, B) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def neg(A) -> Matrix:
    return tuple(tuple(-a for a in r) for r in A)


def scale(c: Scalar, A) -> Matrix:
    return tuple(tuple(c * a for a in r) for r in A)


def trace(A) -> Scalar:
    return sum(A[i][i] for i in range(len(A)))


def matpow(A, k: int) -> Matrix:
    result: Matrix = identity(len(A))
    base = as_matrix(A)
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def is_zero(A) -> bool:
    return all(x == 0 for r in A for x in r)


def _integer_rows(M) -> list[list[int]]:
    """Scale a rational matrix to an integer one with the same row space."""
    rows = []
    for r in M:
        fr = [Fraction(x) for x in r]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in fr])
    return rows


def _bareiss(rows: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place.

    Returns ``(rank, sign * last_pivot)``; for a full-rank square input the
    second value is the determinant.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    sign = 1
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            ric = rows[i][c]
            row_i, row_r = rows[i], rows[r]
            for j in range(c + 1, ncols):
                # exact by Sylvester's identity
                row_i[j] = (piv * row_i[j] - ric * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
    return r, sign * prev


def det(M: Sequence[Sequence[Scalar]]) -> Fraction:
    """Exact determinant (Bareiss over the integers after clearing denominators)."""
    M = as_matrix(M)
    n = len(M)
    den = 1
    for r in M:
        for x in r:
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
    rows = [[int(Fraction(x) * den) for x in r] for r in M]
    rk, d = _bareiss(rows)
    if rk < n:
        return Fraction(0)
    return Fraction(d, den**n)


def rank(M: Sequence[Sequence[Scalar]]) -> int:
    """Rank over the rationals. Rectangular input is accepted."""
    rows = _integer_rows(M)
    if not rows or not rows[0]:
        return 0
    return _bareiss(rows)[0]


def inverse(M: Sequence[Sequence[Scalar]]) -> RatMatrix:
    """Exact inverse by Gauss-Jordan over the rationals."""
    M = as_matrix(M)
    n = len(M)
    aug = [[Fraction(x) for x in M[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        if piv != 1:
            aug[c] = [x / piv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return tuple(tuple(r[n:]) for r in aug)


def is_nilpotent(M: Sequence[Sequence[Scalar]]) -> bool:
    """True iff M**n vanishes, n being the side length."""
    M = as_matrix(M)
    return is_zero(matpow(M, len(M)))


def charpoly(M: Sequence[Sequence[Scalar]]) -> tuple[Scalar, ...]:
    """Coefficients of det(x*I - M), highest degree first (leading 1).

    Uses the division-free Berkowitz algorithm, so integer input yields
    integer coefficients without any rational intermediates.
    """
    A = as_matrix(M)
    n = len(A)
    # Berkowitz: build the Toeplitz products for each leading principal block
    poly: list[Scalar] = [1, -A[0][0]]
    for k in range(1, n):
        R = [A[k][j] for j in range(k)]  # row k, left of the diagonal
        C = [A[i][k] for i in range(k)]  # column k, above the diagonal
        S = [list(A[i][:k]) for i in range(k)]
        # vector sequence: a_k, R.C, R.S.C, R.S^2.C, ...
        col = [1, -A[k][k]]
        v = C
        for _ in range(k):
            col.append(-sum(r * x for r, x in zip(R, v)))
            v = [sum(S[i][j] * v[j] for j in range(k)) for i in range(k)]
        # multiply the lower-triangular Toeplitz matrix by the old polynomial
        new = []
        for i in range(k + 2):
            new.append(sum(col[i - j] * poly[j] for j in range(len(poly)) if 0 <= i - j < len(col)))
        poly = new
    return tuple(poly)


def integer_kernel(M: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """A basis of the saturated integer kernel {v in Z^n : M v = 0}.

    Column-style integer echelon reduction with the unimodular transform
    tracked alongside, so the returned vectors span the full lattice of
    integer solutions (not just a finite-index sublattice).
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if A else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src
        for row in A:
            row[dst] -= q * row[src]
        for row in U:
            row[dst] -= q * row[src]

    def swap(a: int, b: int) -> None:
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in U:
            row[a], row[b] = row[b], row[a]

    c = 0
    for r in range(m):
        if c == n:
            break
        while True:
            nz = [j for j in range(c, n) if A[r][j] != 0]
            if not nz:
                break
            p = min(nz, key=lambda j: abs(A[r][j]))
            swap(c, p)
            done = True
            for j in range(c + 1, n):
                if A[r][j]:
                    colop(j, c, A[r][j] // A[r][c])
                    if A[r][j]:
                        done = False
            if done:
                c += 1
                break
    return tuple(tuple(U[i][j] for i in range(n)) for j in range(c, n))


def smith_invariants(M: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Diagonal of the Smith normal form (nonnegative, each dividing the next).

    Trailing zeros mark the rank deficiency. Works for rectangular input.
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if A else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // piv
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // piv
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        clean = False
            if clean:
                break
            # a smaller remainder exists in row/column t; move it to the pivot
            _, pi, pj = min(
                [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                + [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            )
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    # fix divisibility: the multiset of gcd/lcm pairs gives the invariant factors
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            if g:
                diag[i], diag[j] = g, a * b // g
    return tuple(diag) + (0,) * (min(m, n) - len(diag))


def descartes_signature(poly: Sequence[Scalar]) -> tuple[int, int, int]:
    """(positive, negative, zero) root counts of a real-rooted polynomial.

    Descartes' rule of signs is exact when every root is real, which holds
    for characteristic polynomials of symmetric matrices.
    """
    coeffs = list(poly)
    zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zero += 1

    def changes(cs: list) -> int:
        signs = [c > 0 for c in cs if c != 0]
        return sum(a != b for a, b in zip(signs, signs[1:]))

    deg = len(coeffs) - 1
    flipped = [c * (-1) ** (deg - i) for i, c in enumerate(coeffs)]
    return changes(coeffs), changes(flipped), zero
