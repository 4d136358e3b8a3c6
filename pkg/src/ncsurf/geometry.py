"""Intersection theory on the Hirzebruch surface F_1 and the canonical
divisor of orders obtained by pulling back a maximal order on the plane.

Divisors are written in the basis (H, E): H the pullback of a line, E the
exceptional curve, with H.H = 1, H.E = 0, E.E = -1. The Mori cone is spanned
by a fibre f = H - E and the negative section C_0 = E.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class DivisorF1:
    coeff_H: Fraction
    coeff_E: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff_H", Fraction(self.coeff_H))
        object.__setattr__(self, "coeff_E", Fraction(self.coeff_E))

    def __add__(self, other: "DivisorF1") -> "DivisorF1":
        return DivisorF1(self.coeff_H + other.coeff_H, self.coeff_E + other.coeff_E)

    def __sub__(self, other: "DivisorF1") -> "DivisorF1":
        return DivisorF1(self.coeff_H - other.coeff_H, self.coeff_E - other.coeff_E)

    def __neg__(self) -> "DivisorF1":
        return DivisorF1(-self.coeff_H, -self.coeff_E)

    def __mul__(self, c: Rational) -> "DivisorF1":
        return DivisorF1(self.coeff_H * c, self.coeff_E * c)

    __rmul__ = __mul__

    def __str__(self) -> str:
        terms = [(c, name) for c, name in ((self.coeff_H, "H"), (self.coeff_E, "E")) if c]
        if not terms:
            return "0"
        out = ""
        for c, name in terms:
            mag = "" if abs(c) == 1 else f"{abs(c)}"
            sign = "-" if c < 0 else "+"
            out += f" {sign} {mag}{name}" if out else f"{'-' if c < 0 else ''}{mag}{name}"
        return out

    def is_zero(self) -> bool:
        return self.coeff_H == 0 and self.coeff_E == 0

    @classmethod
    def from_ruled_basis(cls, c0: Rational, f: Rational) -> "DivisorF1":
        """The divisor ``c0 * C_0 + f * fibre``."""
        section, fibre = cone_generators()[1], cone_generators()[0]
        return section * c0 + fibre * f

    def ruled_coordinates(self) -> tuple[Fraction, Fraction]:
        """Coefficients of (C_0, f). Uses H = C_0 + f and E = C_0."""
        return self.coeff_H + self.coeff_E, self.coeff_H


H = DivisorF1(1, 0)
E = DivisorF1(0, 1)
ZERO = DivisorF1(0, 0)
CANONICAL_F1 = DivisorF1(-3, 1)


def intersect(D1: DivisorF1, D2: DivisorF1) -> Fraction:
    return D1.coeff_H * D2.coeff_H - D1.coeff_E * D2.coeff_E


def cone_generators() -> tuple[DivisorF1, DivisorF1]:
    """(fibre, section) = (H - E, E)."""
    return H - E, E


@dataclass(frozen=True)
class OrderSpec:
    """Maximal order of the given degree on F_1 with uniform ramification index."""

    degree: int
    ramification_class: DivisorF1 = DivisorF1(3, 0)
    ramification_index: int | None = None

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be at least 1")
        if self.ramification_index is None:
            object.__setattr__(self, "ramification_index", self.degree)
        if not self.ramification_class.is_zero() and self.ramification_index < 2:
            raise ValueError("a ramified order needs ramification index at least 2")

    @classmethod
    def pullback_of_cubic(cls, m: int) -> "OrderSpec":
        """Degree m order pulled back from the plane, ramified on a cubic.

        Degree 1 is the unramified case (the surface itself).
        """
        if m == 1:
            return cls(1, ZERO, 1)
        return cls(m, DivisorF1(3, 0), m)


def order_canonical(spec: OrderSpec) -> DivisorF1:
    """K_A = K_{F_1} + (1 - 1/e) C for ramification curve C of index e."""
    if spec.ramification_class.is_zero():
        return CANONICAL_F1
    weight = 1 - Fraction(1, spec.ramification_index)
    return CANONICAL_F1 + spec.ramification_class * weight


@dataclass(frozen=True)
class DelPezzoReport:
    is_del_pezzo: bool
    minus_k_dot_fibre: Fraction
    minus_k_dot_section: Fraction
    canonical: DivisorF1

    def __str__(self) -> str:
        return "\n".join(
            [
                f"K_A = {self.canonical}",
                f"-K_A . f = {self.minus_k_dot_fibre}",
                f"-K_A . C0 = {self.minus_k_dot_section}",
                f"del Pezzo: {'yes' if self.is_del_pezzo else 'no'} (strict positivity on both cone generators)",
            ]
        )


def is_del_pezzo(spec: OrderSpec) -> DelPezzoReport:
    """Kleiman test: -K_A must be strictly positive on f and on C_0."""
    K = order_canonical(spec)
    f, c0 = cone_generators()
    a = intersect(-K, f)
    b = intersect(-K, c0)
    return DelPezzoReport(a > 0 and b > 0, a, b, K)


@dataclass(frozen=True)
class FiberReport:
    fiber_type: str  # "ruled", "half_ruled", "elliptic" or "other"
    degree: int
    points: Fraction
    index: int
    note: str = ""

    def __str__(self) -> str:
        label = self.fiber_type.replace("_", "-")
        out = f"type: {label} (degree {self.degree}, {self.points} ramification points on the generic fibre, index {self.index})"
        return out + (f"\nnote: {self.note}" if self.note else "")


def generic_fiber_type(spec: OrderSpec) -> FiberReport:
    """Classify the generic fibre by its ramification pattern."""
    f, _ = cone_generators()
    points = intersect(spec.ramification_class, f)
    m, e = spec.degree, spec.ramification_index
    if m == 2 and points == 3 and e == 2:
        kind, note = "half_ruled", ""
    elif m == 3 and points == 3 and e == 3:
        kind, note = "elliptic", ""
    elif points == 2 and e >= 2:
        kind, note = "ruled", "ruled read as two ramification points of equal index"
    else:
        kind, note = "other", ""
    return FiberReport(kind, m, points, e, note)
