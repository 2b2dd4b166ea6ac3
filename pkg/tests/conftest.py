from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from barkoszul.groups import builtin_group
from barkoszul.polynomial import Polynomial
from barkoszul.scalars import CycScalar, euler_phi

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_GROUPS = {}


def group(name):
    if name not in _GROUPS:
        _GROUPS[name] = builtin_group(name)
    return _GROUPS[name]


@pytest.fixture(scope="session")
def klein():
    return group("klein4-3d")


@pytest.fixture(scope="session")
def cyc4():
    return group("cyclic-4-2d")


@pytest.fixture(scope="session")
def sym3():
    return group("sym3-perm")


small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def cyc_scalars(order):
    return st.lists(small_fracs, min_size=euler_phi(order), max_size=euler_phi(order)).map(
        lambda cs: CycScalar(order, cs)
    )


def exponents(n, max_deg=3):
    return st.lists(st.integers(0, max_deg), min_size=n, max_size=n).map(tuple)


def polynomials(n, max_deg=3, max_terms=4, order=1):
    coeff = st.integers(-4, 4) if order == 1 else cyc_scalars(order)
    return st.dictionaries(exponents(n, max_deg), coeff, max_size=max_terms).map(
        lambda d: Polynomial(n, d)
    )


def monomials(n, max_deg=3):
    return exponents(n, max_deg).map(lambda e: Polynomial(n, {e: 1}))


def F(a, b=1):
    return Fraction(a, b)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
