from hypothesis import given, strategies as st

from barkoszul.linalg import LinearMap
from barkoszul.resolutions import (
    act_on_bar_chain,
    act_on_koszul_chain,
    bar_differential,
    bar_tensor,
    koszul_basis,
    koszul_differential,
    koszul_tensor,
    multiplication,
    phi,
)
from barkoszul.syntax import parse_polynomial

from conftest import polynomials

P2 = lambda s: parse_polynomial(s, 2)


def bar_chains(n, p, max_deg=2):
    return st.lists(polynomials(n, max_deg, 2), min_size=p + 2, max_size=p + 2).map(bar_tensor)


def koszul_chains(n, max_deg=2):
    return st.tuples(
        polynomials(n, max_deg, 2), polynomials(n, max_deg, 2), st.sets(st.integers(0, n - 1))
    ).map(lambda t: koszul_tensor(t[0], t[1], sorted(t[2])))


def test_small_values():
    c = bar_tensor([P2("1"), P2("v1"), P2("v2"), P2("1")])
    assert str(bar_differential(c)) == "(v1 | v2 | 1) - (1 | v1*v2 | 1) + (1 | v1 | v2)"
    k = koszul_tensor(P2("1"), P2("1"), [1, 0])
    assert str(k) == "-(1 | 1 | wedge(v1,v2))"
    assert str(phi(koszul_tensor(P2("1"), P2("1"), [0, 1]))) == "(1 | v1 | v2 | 1) - (1 | v2 | v1 | 1)"
    assert multiplication(bar_tensor([P2("v1"), P2("v2")])) == P2("v1*v2")


@given(st.integers(2, 4).flatmap(lambda p: bar_chains(2, p)))
def test_bar_differential_squares_to_zero(c):
    assert not bar_differential(bar_differential(c))


@given(bar_chains(2, 1))
def test_augmentation(c):
    assert not multiplication(bar_differential(c))


@given(koszul_chains(3))
def test_koszul_differential_squares_to_zero(c):
    if c.degree >= 2:
        assert not koszul_differential(koszul_differential(c))


@given(koszul_chains(3))
def test_phi_is_a_chain_map(c):
    if c.degree >= 1:
        assert bar_differential(phi(c)) == phi(koszul_differential(c))


matrices3 = st.lists(st.integers(-2, 2), min_size=9, max_size=9).map(
    lambda xs: LinearMap([xs[0:3], xs[3:6], xs[6:9]])
)


@given(matrices3, koszul_chains(3, 1))
def test_phi_is_gl_equivariant(h, c):
    assert act_on_bar_chain(h, phi(c)) == phi(act_on_koszul_chain(h, c))


def test_koszul_basis_counts():
    assert [len(koszul_basis(3, p)) for p in range(4)] == [1, 3, 3, 1]
