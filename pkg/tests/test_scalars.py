from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from barkoszul.scalars import (
    CycScalar,
    cyclotomic_polynomial,
    euler_phi,
    format_scalar,
    quantum_integer,
    zeta_power,
)

from conftest import cyc_scalars


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert [euler_phi(m) for m in (1, 2, 3, 4, 5, 6, 12)] == [1, 1, 2, 2, 4, 2, 4]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 8, 12])
def test_zeta_has_order_m(m):
    z = zeta_power(m, 1)
    assert z ** m == 1
    for k in range(1, m):
        assert z ** k != 1
    assert sum((zeta_power(m, k) for k in range(m)), start=0) == (1 if m == 1 else 0)


def test_rational_collapse_and_mixed_equality():
    z = zeta_power(4, 1)
    assert z * z == -1
    assert (z * z) == Fraction(-1)
    assert hash(CycScalar.rational(Fraction(3, 2), 6)) == hash(Fraction(3, 2))
    assert zeta_power(2, 1) == -1


def test_embedding_between_orders():
    i = zeta_power(4, 1)
    w = zeta_power(12, 3)
    assert i.embed(12) == w
    assert i + zeta_power(3, 1) == zeta_power(12, 3) + zeta_power(12, 4)
    with pytest.raises(ValueError):
        zeta_power(12, 1).embed(4)


def test_quantum_integers():
    assert quantum_integer(0, -1) == 0
    assert quantum_integer(1, -1) == 1
    assert quantum_integer(2, -1) == 0
    assert quantum_integer(3, -1) == 1
    assert quantum_integer(5, 1) == 5
    i = zeta_power(4, 1)
    assert quantum_integer(4, i) == 0
    assert quantum_integer(2, i) == 1 + i
    with pytest.raises(ValueError):
        quantum_integer(-1, 2)


def test_format():
    assert format_scalar(Fraction(-3, 2)) == "-3/2"
    assert format_scalar(zeta_power(3, 2)) == "-z - 1"
    assert format_scalar(zeta_power(4, 1) * Fraction(1, 2) - 1) == "1/2*z - 1"
    assert format_scalar(0) == "0"


@given(cyc_scalars(12), cyc_scalars(12), cyc_scalars(12))
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(cyc_scalars(5))
def test_inverse(a):
    if a:
        assert a * a.inverse() == 1
        assert a / a == 1
    else:
        with pytest.raises(ZeroDivisionError):
            a.inverse()


@given(cyc_scalars(6), st.integers(0, 5))
def test_power_is_repeated_product(a, k):
    out = 1
    for _ in range(k):
        out = out * a
    assert a ** k == out


@given(cyc_scalars(8))
def test_complex_embedding_is_homomorphism(a):
    b = a * a
    assert abs(b.to_complex() - a.to_complex() ** 2) < 1e-6
