from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from barkoszul.linalg import LinearMap
from barkoszul.polynomial import (
    Polynomial,
    SkewElement,
    act_on_polynomial,
    format_polynomial,
    from_basis,
    right_twisted_multiply,
    skew_multiply,
    to_basis,
)
from barkoszul.scalars import zeta_power
from barkoszul.syntax import parse_polynomial

from conftest import group, polynomials

P3 = lambda s: parse_polynomial(s, 3, 12)

matrices = st.lists(st.integers(-2, 2), min_size=9, max_size=9).map(
    lambda xs: LinearMap([xs[0:3], xs[3:6], xs[6:9]])
)


def test_arithmetic_and_normal_form():
    f = P3("3*v1^2*v2 - z*v3")
    assert str(f) == "3*v1^2*v2 - z*v3"
    assert f - f == Polynomial.zero(3)
    assert (P3("v1 + v2") ** 2) == P3("v1^2 + 2*v1*v2 + v2^2")
    assert P3("v1*v2").partial(0) == P3("v2")
    assert P3("2*v1 + 1").degree() == 1
    assert Polynomial.zero(3).degree() == -1


def test_format_multi_term_scalar():
    f = Polynomial(2, {(1, 0): 1 + zeta_power(3, 1)})
    assert format_polynomial(f) == "(z + 1)*v1"


@given(polynomials(3), polynomials(3), polynomials(3))
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


@given(polynomials(3, 2, 3), matrices, matrices)
def test_action_is_a_homomorphism(f, a, b):
    assert act_on_polynomial(a @ b, f) == act_on_polynomial(a, act_on_polynomial(b, f))


@given(polynomials(3, 2, 3), polynomials(3, 2, 3), matrices)
def test_action_is_multiplicative(f, g, a):
    assert act_on_polynomial(a, f * g) == act_on_polynomial(a, f) * act_on_polynomial(a, g)


@given(polynomials(3, 3, 4))
def test_basis_round_trip(f):
    B = LinearMap([[1, 1, 0], [0, 1, 2], [1, 0, 1]])
    assert from_basis(to_basis(f, B), B) == f


def test_basis_coordinates_meaning():
    # v1 in the new coordinates is the first column of B
    B = LinearMap([[1, 1], [0, 1]])
    assert from_basis(Polynomial.variable(2, 0), B) == Polynomial.variable(2, 0)
    assert from_basis(Polynomial.variable(2, 1), B) == parse_polynomial("v1 + v2", 2)
    with pytest.raises(ValueError):
        act_on_polynomial(LinearMap.identity(3), Polynomial.variable(2, 0))


def test_skew_multiplication_rule():
    G = group("klein4-3d")
    h = G.resolve("h")
    x = SkewElement(G, {h: P3("v1")})
    y = SkewElement(G, {0: P3("v1*v3")})
    # (v1 hbar)(v1 v3 1bar) = v1 (h.(v1 v3)) hbar = -v1^2 v3 hbar
    assert skew_multiply(x, y) == SkewElement(G, {h: -P3("v1^2*v3")})
    assert right_twisted_multiply(x, P3("v2")) == SkewElement(G, {h: -P3("v1*v2")})
    assert str(SkewElement(G, {h: P3("1")})) == "[h]"


@given(st.data())
def test_skew_associativity(data):
    G = group("sym3-perm")
    els = []
    for _ in range(3):
        comps = {data.draw(st.integers(0, 5)): data.draw(polynomials(3, 2, 2))}
        els.append(SkewElement(G, comps))
    a, b, c = els
    assert (a * b) * c == a * (b * c)


def test_scale_by_fraction():
    f = P3("2*v1").scale(Fraction(1, 2))
    assert f == P3("v1")
