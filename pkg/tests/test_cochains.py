import pytest
from hypothesis import given, strategies as st

from barkoszul.cochains import (
    BarCochain,
    TaggedForm,
    bar_cochain_differential,
    change_frame,
    group_act_on_form,
    koszul_cochain_differential,
    naive_koszul_cochain_differential,
    phi_star,
    psi_star_evaluate,
    quantum_partial,
    reynolds,
    upsilon,
    upsilon_evaluate,
)
from barkoszul.linalg import LinearMap
from barkoszul.polynomial import Polynomial, SkewElement, act_on_polynomial
from barkoszul.scalars import quantum_integer, zeta_power
from barkoszul.syntax import parse_polynomial
from barkoszul.verify import act_on_skew

from conftest import group, polynomials

P3 = lambda s: parse_polynomial(s, 3)
GROUPS = ["klein4-3d", "cyclic-4-2d", "sym3-perm"]


def forms(G, max_deg=2):
    n = G.dim

    def build(t):
        g, J, f = t
        return TaggedForm.single(g, f, sorted(J))

    return st.tuples(
        st.integers(0, G.order - 1),
        st.sets(st.integers(0, n - 1), max_size=n),
        polynomials(n, max_deg, 2, G.field_order),
    ).map(build)


# -- quantum partials ----------------------------------------------------------

def test_quantum_partial_examples():
    assert not quantum_partial(P3("1"), 0, -1)
    i = zeta_power(4, 1)
    f = Polynomial(3, {(3, 2, 0): 1})
    assert quantum_partial(f, 0, i) == Polynomial(3, {(2, 2, 0): quantum_integer(3, i)})
    assert not quantum_partial(P3("v1^2"), 0, -1)
    assert quantum_partial(P3("v1^3*v2"), 0, 1) == P3("3*v1^2*v2")


@given(polynomials(3, 4, 4), st.integers(0, 2), st.sampled_from([-1, 1, 2]))
def test_quantum_partial_is_a_divided_difference(f, i, eps):
    # (f - s.f) = (v - s.v) * d f  with s scaling v_i by eps
    factors = [eps if j == i else 1 for j in range(3)]
    lhs = f - f.scale_variables(factors)
    rhs = Polynomial.variable(3, i).scale(1 - eps) * quantum_partial(f, i, eps)
    assert lhs == rhs


@pytest.mark.parametrize("name", GROUPS)
def test_quantum_transformation_law(name):
    G = group(name)
    import random

    rng = random.Random(5)
    from barkoszul.verify import random_polynomial

    for a in range(G.order):
        for g in range(G.order):
            eig = G.eigen(g)
            moved = eig.transported(G.elements[a], G.conj(a, g))
            f = random_polynomial(rng, G.dim, 4, 3, G.field_order)
            for i in range(G.dim):
                lhs = act_on_polynomial(
                    G.elements[a], quantum_partial(act_on_polynomial(G.elements[G.inverse[a]], f), i, basis=eig)
                )
                assert lhs == quantum_partial(f, i, basis=moved)


# -- Upsilon -------------------------------------------------------------------

def test_klein_example(klein):
    h = klein.resolve("h")
    fh = P3("v3^2 + 2*v2")
    alpha = TaggedForm.single(h, fh, [0, 1])
    assert upsilon_evaluate(alpha, [P3("v1"), P3("v2")], klein) == SkewElement(klein, {h: fh})
    assert not upsilon_evaluate(alpha, [P3("v2"), P3("v1")], klein)


def test_identity_component_is_ordinary_partial(klein):
    alpha = TaggedForm.single(0, P3("1"), [0])
    assert upsilon_evaluate(alpha, [P3("v1^3")], klein) == SkewElement(klein, {0: P3("3*v1^2")})


def test_twist_applies_to_earlier_coordinates(klein):
    # g = h has eps = (-1, -1, 1); the second factor is twisted by s_1 s_2 on d_3
    h = klein.resolve("h")
    alpha = TaggedForm.single(h, P3("1"), [0, 2])
    value = upsilon_evaluate(alpha, [P3("v1"), P3("v2*v3")], klein)
    assert value == SkewElement(klein, {h: P3("-v2")})


def test_vanishing_rule(klein):
    h = klein.resolve("h")
    alpha = TaggedForm.single(h, P3("1"), [0, 2])
    # zero unless each argument involves its wedge variable
    assert not upsilon_evaluate(alpha, [P3("v2"), P3("v3")], klein)
    assert not upsilon_evaluate(alpha, [P3("v1"), P3("v1*v2")], klein)


@pytest.mark.parametrize("name", GROUPS)
def test_upsilon_equals_psi_star_randomized(name):
    G = group(name)

    @given(forms(G), st.lists(polynomials(G.dim, 3, 2, G.field_order), min_size=3, max_size=3))
    def check(alpha, args):
        args = args[: alpha.degree]
        assert upsilon_evaluate(alpha, args, G) == psi_star_evaluate(alpha, args, G)

    check()


@pytest.mark.parametrize("name", GROUPS)
def test_phi_star_upsilon_is_identity(name):
    G = group(name)

    @given(forms(G))
    def check(alpha):
        assert phi_star(upsilon(alpha, G), alpha.degree, G) == alpha

    check()


def test_phi_star_hand_expansion(klein):
    h = klein.resolve("h")
    v = [P3("v1"), P3("v2"), P3("v3")]

    def F(x, y):
        # nonzero only on (v1, v2) and (v2, v1)
        if (x, y) == (v[0], v[1]):
            return SkewElement(klein, {h: P3("5")})
        if (x, y) == (v[1], v[0]):
            return SkewElement(klein, {h: P3("2")})
        return SkewElement.zero(klein)

    out = phi_star(BarCochain(2, F, klein), 2, klein)
    assert out == TaggedForm.single(h, P3("3"), [0, 1])
    const = BarCochain(0, lambda: SkewElement(klein, {0: P3("v2")}), klein)
    assert phi_star(const, 0, klein) == TaggedForm.single(0, P3("v2"), [])


@given(st.data())
def test_upsilon_is_multilinear(data):
    G = group("cyclic-4-2d")
    alpha = data.draw(forms(G))
    p = alpha.degree
    args = [data.draw(polynomials(2, 3, 2, 4)) for _ in range(p)]
    if not p:
        return
    k = data.draw(st.integers(0, p - 1))
    extra = data.draw(polynomials(2, 3, 2))
    summed = list(args)
    summed[k] = args[k] + extra.scale(3)
    other = list(args)
    other[k] = extra
    assert upsilon_evaluate(alpha, summed, G) == upsilon_evaluate(alpha, args, G) + upsilon_evaluate(alpha, other, G).scale(3)


# -- d^* -----------------------------------------------------------------------

def test_dstar_examples(klein):
    h = klein.resolve("h")
    out = koszul_cochain_differential(TaggedForm.single(h, P3("1"), []), klein)
    assert out == TaggedForm.single(h, P3("2*v1"), [0]) + TaggedForm.single(h, P3("2*v2"), [1])
    assert not koszul_cochain_differential(TaggedForm.single(0, P3("v1*v3"), [1]), klein)


@pytest.mark.parametrize("name", GROUPS)
def test_dstar_identities(name):
    G = group(name)

    @given(forms(G))
    def check(alpha):
        d = koszul_cochain_differential(alpha, G)
        assert d == naive_koszul_cochain_differential(alpha, G)
        assert not koszul_cochain_differential(d, G)

    check()


@pytest.mark.parametrize("name", GROUPS[:2])
def test_upsilon_is_a_cochain_map(name):
    G = group(name)

    @given(forms(G, 1), st.lists(polynomials(G.dim, 2, 2), min_size=4, max_size=4))
    def check(alpha, args):
        if alpha.degree >= G.dim:
            return
        args = args[: alpha.degree + 1]
        lhs = upsilon_evaluate(koszul_cochain_differential(alpha, G), args, G)
        rhs = bar_cochain_differential(upsilon(alpha, G), G)(*args)
        assert lhs == rhs

    check()


# -- group action --------------------------------------------------------------

def test_action_examples(klein):
    g, h = klein.resolve("g"), klein.resolve("h")
    alpha = TaggedForm.single(h, P3("v1"), [0])
    assert group_act_on_form(0, alpha, klein) == alpha
    assert group_act_on_form(g, alpha, klein) == alpha
    beta = TaggedForm.single(h, P3("v2"), [0])
    assert group_act_on_form(g, beta, klein) == beta.scale(-1)


def test_reynolds_examples(klein):
    assert not reynolds(TaggedForm.single(0, P3("v1"), []), klein)
    inv = TaggedForm.single(0, P3("v1^2"), [])
    assert reynolds(inv, klein) == inv


@pytest.mark.parametrize("name", GROUPS)
def test_action_laws_and_reynolds(name):
    G = group(name)

    @given(forms(G), st.integers(0, G.order - 1), st.integers(0, G.order - 1))
    def check(alpha, a, b):
        assert group_act_on_form(G.mul(a, b), alpha, G) == group_act_on_form(a, group_act_on_form(b, alpha, G), G)
        for g in alpha.components():
            piece = alpha.restrict(g)
            for z in G.centralizers[g]:
                assert group_act_on_form(z, piece, G).components() in ([g], [])
        r = reynolds(alpha, G)
        assert reynolds(r, G) == r
        assert group_act_on_form(a, r, G) == r

    check()


@pytest.mark.parametrize("name", GROUPS)
def test_action_commutes_with_dstar(name):
    G = group(name)

    @given(forms(G), st.integers(0, G.order - 1))
    def check(alpha, a):
        lhs = koszul_cochain_differential(group_act_on_form(a, alpha, G), G)
        assert lhs == group_act_on_form(a, koszul_cochain_differential(alpha, G), G)

    check()


@pytest.mark.parametrize("name", GROUPS)
def test_change_of_basis_rule(name):
    # a.Upsilon_{g,B}(alpha) = Upsilon_{aga^-1, aB}(alpha), same coordinates
    G = group(name)

    @given(forms(G), st.integers(0, G.order - 1), st.lists(polynomials(G.dim, 2, 2), min_size=3, max_size=3))
    def check(alpha, a, args):
        alpha = alpha.restrict(alpha.components()[0]) if alpha else alpha
        if not alpha:
            return
        g = alpha.components()[0]
        args = args[: alpha.degree]
        k = G.conj(a, g)
        moved = G.eigen(g).transported(G.elements[a], k)
        relabeled = TaggedForm(alpha.degree, G.dim, {(k, e, J): c for (_, e, J), c in alpha.terms.items()})
        pulled = [act_on_polynomial(G.elements[G.inverse[a]], f) for f in args]
        lhs = act_on_skew(a, upsilon_evaluate(alpha, pulled, G), G)
        assert lhs == upsilon_evaluate(relabeled, args, G, bases={k: moved})

    check()


def test_change_frame_round_trip():
    B = LinearMap([[1, 1, 0], [0, 1, 0], [0, 2, 1]])
    I = LinearMap.identity(3)
    comp = {((1, 0, 2), (0, 2)): 3, ((0, 1, 0), (1, 2)): -1}
    there = change_frame(comp, 3, 2, I, B)
    assert change_frame(there, 3, 2, B, I) == comp


def test_tagged_form_validation():
    with pytest.raises(ValueError):
        TaggedForm(2, 3, {(0, (0, 0, 0), (1, 0)): 1})
    assert not TaggedForm.single(0, P3("1"), [1, 1])
    assert TaggedForm.single(0, P3("1"), [1, 0]) == TaggedForm.single(0, P3("-1"), [0, 1])
