from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncsurf.geometry import (
    E,
    H,
    DivisorF1,
    OrderSpec,
    cone_generators,
    generic_fiber_type,
    intersect,
    is_del_pezzo,
    order_canonical,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
divisors = st.builds(DivisorF1, rationals, rationals)


def test_intersection_numbers():
    assert intersect(H, H) == 1
    assert intersect(E, E) == -1
    assert intersect(H, E) == 0
    f, c0 = cone_generators()
    assert intersect(c0 + f, c0) == 0  # p*H = C0 + f meets E = C0 trivially


def test_cone_generators():
    f, c0 = cone_generators()
    assert f == H - E and c0 == E
    assert intersect(f, f) == 0
    assert intersect(f, c0) == 1
    assert intersect(c0, c0) == -1


def test_order_canonical():
    for m in (2, 3, 7):
        assert order_canonical(OrderSpec.pullback_of_cubic(m)) == DivisorF1(Fraction(-3, m), 1)
    assert order_canonical(OrderSpec(1, DivisorF1(0, 0), 1)) == DivisorF1(-3, 1)
    assert order_canonical(OrderSpec(2)) == DivisorF1(Fraction(-3, 2), 1)


def test_del_pezzo_examples():
    r = is_del_pezzo(OrderSpec.pullback_of_cubic(2))
    assert r.is_del_pezzo and (r.minus_k_dot_fibre, r.minus_k_dot_section) == (Fraction(1, 2), 1)
    r = is_del_pezzo(OrderSpec.pullback_of_cubic(3))
    assert not r.is_del_pezzo and (r.minus_k_dot_fibre, r.minus_k_dot_section) == (0, 1)
    r = is_del_pezzo(OrderSpec.pullback_of_cubic(1))
    assert r.is_del_pezzo and (r.minus_k_dot_fibre, r.minus_k_dot_section) == (2, 1)


@pytest.mark.parametrize("m", range(1, 51))
def test_kleiman_closed_form(m):
    f, c0 = cone_generators()
    K = order_canonical(OrderSpec.pullback_of_cubic(m))
    assert intersect(-K, f) == Fraction(3, m) - 1
    assert intersect(-K, c0) == 1
    assert is_del_pezzo(OrderSpec.pullback_of_cubic(m)).is_del_pezzo == (m in (1, 2))


def test_fiber_types():
    assert generic_fiber_type(OrderSpec.pullback_of_cubic(2)).fiber_type == "half_ruled"
    assert generic_fiber_type(OrderSpec.pullback_of_cubic(3)).fiber_type == "elliptic"
    assert generic_fiber_type(OrderSpec.pullback_of_cubic(4)).fiber_type == "other"
    assert generic_fiber_type(OrderSpec.pullback_of_cubic(2)).points == 3
    conic = generic_fiber_type(OrderSpec(2, DivisorF1(2, 0), 2))
    assert conic.fiber_type == "ruled" and conic.note


def test_order_spec_validation():
    with pytest.raises(ValueError):
        OrderSpec(0)
    with pytest.raises(ValueError):
        OrderSpec(1)  # cubic ramification with index 1


@given(divisors, divisors, divisors, rationals)
def test_bilinear_symmetric(a, b, c, t):
    assert intersect(a, b) == intersect(b, a)
    assert intersect(a + b, c) == intersect(a, c) + intersect(b, c)
    assert intersect(a * t, b) == t * intersect(a, b)


@given(divisors, divisors)
def test_ruled_basis_consistency(a, b):
    f, c0 = cone_generators()

    def ruled_intersect(x, y):
        (x0, xf), (y0, yf) = x.ruled_coordinates(), y.ruled_coordinates()
        # C0^2 = -1, C0.f = 1, f^2 = 0
        return -x0 * y0 + x0 * yf + xf * y0

    assert ruled_intersect(a, b) == intersect(a, b)
    assert DivisorF1.from_ruled_basis(*a.ruled_coordinates()) == a
