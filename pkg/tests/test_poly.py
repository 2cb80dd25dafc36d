from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gkm.poly import (
    Laurent,
    Poly,
    divides_euler_K,
    divides_linear,
    euler_from_weight_K,
    exact_divide,
    linear_from_weight,
)

a, b = Poly.var(0, 2), Poly.var(1, 2)

small_polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-6, 6).filter(bool), max_size=5
).map(lambda t: Poly(2, t))
small_laurents = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-6, 6).filter(bool), max_size=5
).map(lambda t: Laurent(2, t))
weights = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(any)


def test_canonical_form_drops_zeros():
    p = Poly(2, {(1, 0): 1, (0, 1): 0})
    assert p.terms == {(1, 0): 1}
    assert (a - a).is_zero()


def test_render_and_json_roundtrip():
    p = a * a * 2 - a * b + 3
    assert p.render(["a", "b"]) == "2*a^2 - a*b + 3"
    assert Poly.from_json(p.to_json(), 2) == p
    f = Laurent(2, {(-1, 2): 3, (0, 0): -1})
    assert Laurent.from_json(f.to_json(), 2) == f


def test_homogeneous_degree():
    assert (a * b + a * a).homogeneous_degree() == 2
    assert (a + 1).homogeneous_degree() is None
    assert Poly.zero(2).homogeneous_degree() is None


def test_divides_linear_examples():
    ok, q = divides_linear((1, 1), a * a - b * b)
    assert ok and q == a - b
    assert not divides_linear((1, 0), b)[0]
    # imprimitive weight: divisibility is over Q, the quotient carries the denominator
    ok, q = divides_linear((2, 0), a * b)
    assert ok and q == b * Fraction(1, 2) and not q.is_integral()
    assert divides_linear((-1, -1), a * a - b * b)[0]


def test_divides_euler_K_examples():
    # 1 - e^{(1,0)} divides e^{(0,1)} - e^{(1,1)} = e^{(0,1)}(1 - e^{(1,0)})
    ok, q = divides_euler_K((1, 0), Laurent.character((0, 1)) - Laurent.character((1, 1)))
    assert ok and q == Laurent.character((0, 1))
    # and 1 - e^{2a}: divisible by 1 - e^{a}
    assert divides_euler_K((1, 0), euler_from_weight_K((2, 0)))[0]
    # unit shift: 1 - e^{-a} = -e^{-a}(1 - e^a)
    assert divides_euler_K((1, 0), euler_from_weight_K((-1, 0)))[0]
    assert not divides_euler_K((1, 0), Laurent.character((0, 1)))[0]
    assert not divides_euler_K((2, 0), euler_from_weight_K((1, 0)))[0]


@given(small_polys, weights)
def test_divides_linear_on_products(f, w):
    ok, q = divides_linear(w, f * linear_from_weight(w))
    assert ok and q == f


@given(small_laurents, weights)
def test_divides_euler_K_on_products(f, w):
    ok, q = divides_euler_K(w, f * euler_from_weight_K(w))
    assert ok and q == f


@given(small_polys, small_polys.filter(lambda p: not p.is_zero()))
def test_exact_divide_roundtrip(f, g):
    assert exact_divide(f * g, g) == f


@given(small_laurents, small_laurents.filter(lambda p: not p.is_zero()))
def test_exact_divide_laurent_roundtrip(f, g):
    assert exact_divide(f * g, g) == f


@given(small_polys, small_polys, small_polys)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


def test_substitute():
    p = a * a + a * b * 3
    assert p.substitute({0: 0, 1: 5}) == 0
    assert p.substitute({1: 2}) == Poly(1, {(2,): 1, (1,): 6})
    f = Laurent(2, {(1, -1): 2, (0, 0): 1})
    assert f.substitute({0: 1, 1: 1}) == 3
    with pytest.raises(ValueError):
        f.substitute({1: 0})


def test_rational_coefficients_kept_exact():
    p = Poly(1, {(1,): Fraction(1, 3)})
    assert not p.is_integral()
    assert (p * 3).is_integral()


def test_euler_classes():
    assert linear_from_weight((2, -1)) == a * 2 - b
    assert euler_from_weight_K((1, 0)) == 1 - Laurent.character((1, 0))
    with pytest.raises(ValueError):
        euler_from_weight_K((0, 0))
