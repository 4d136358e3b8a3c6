"""Named Gram matrices: the projective plane, the quadric, and the two
rank-4 families (B_m and its blown-up-plane form B'_m)."""

from __future__ import annotations

from .eulerform import GramMatrix


def gram_p2() -> GramMatrix:
    """Beilinson collection O, O(1), O(2) on the plane."""
    return GramMatrix(((1, 3, 6), (0, 1, 3), (0, 0, 1)))


def gram_quadric() -> GramMatrix:
    """Matrix (A), the quadric surface."""
    return GramMatrix(((1, 2, 2, 4), (0, 1, 0, 2), (0, 0, 1, 2), (0, 0, 0, 1)))


def gram_family(m: int) -> GramMatrix:
    """Matrix B_m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return GramMatrix(((1, m, 2 * m, m), (0, 1, 3, 3), (0, 0, 1, 3), (0, 0, 0, 1)))


def gram_family_blowup(m: int) -> GramMatrix:
    """Matrix B'_m: the plane's collection followed by one extra object."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return GramMatrix(((1, 3, 6, m), (0, 1, 3, m), (0, 0, 1, m), (0, 0, 0, 1)))


def named(spec: str) -> GramMatrix:
    """Look up ``P2``, ``A``, ``B:m`` or ``Bp:m``."""
    name, _, arg = spec.partition(":")
    if name == "P2" and not arg:
        return gram_p2()
    if name == "A" and not arg:
        return gram_quadric()
    if name in ("B", "Bp") and arg:
        try:
            m = int(arg)
        except ValueError:
            raise ValueError(f"bad parameter in {spec!r}") from None
        return gram_family(m) if name == "B" else gram_family_blowup(m)
    raise ValueError(f"unknown named matrix {spec!r}; expected P2, A, B:m or Bp:m")
