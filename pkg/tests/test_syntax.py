import pytest
from hypothesis import given

from barkoszul.syntax import (
    ParseError,
    parse_args,
    parse_form_summands,
    parse_homology_chain,
    parse_koszul_tensor,
    parse_polynomial,
    parse_scalar,
)
from barkoszul.scalars import zeta_power

from conftest import polynomials


def test_basic_expressions():
    f = parse_polynomial("3*v1^2*v2 - z*v3", 3, 4)
    assert f.coefficient((2, 1, 0)) == 3
    assert f.coefficient((0, 0, 1)) == -zeta_power(4, 1)
    assert parse_scalar("1/2*z^2 - 1", 6) == zeta_power(6, 2) / 2 - 1
    assert parse_polynomial("-(v1 + 1)^2", 1) == parse_polynomial("-v1^2 - 2*v1 - 1", 1)


@pytest.mark.parametrize(
    "text, col",
    [("v1 + ", 6), ("v4", 1), ("v1 * (v2", 9), ("2 / v1", 5), ("v1 $ v2", 4), ("", 1)],
)
def test_errors_carry_position(text, col):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, 3)
    assert info.value.col == col
    assert info.value.line == 1


def test_z_requires_order():
    with pytest.raises(ParseError):
        parse_polynomial("z", 2)


@given(polynomials(3, 3, 4, order=6))
def test_render_parse_round_trip(f):
    assert parse_polynomial(str(f), 3, 6) == f


def test_forms_and_tensors():
    items = parse_form_summands("[h](f)^dv1^dv2 + [1] (v1 + v2) ^ dv3 + [g2]", 3)
    assert items[0][0] == "h" and items[0][2] == "f" and items[0][3] == [0, 1]
    assert items[1][1] == parse_polynomial("v1 + v2", 3) and items[1][3] == [2]
    assert items[2][3] == [] and items[2][2] is None
    left, right, wedge = parse_koszul_tensor("v1 | v2^2 | wedge(v2,v1)", 2)
    assert wedge == [1, 0]
    assert parse_args("v1, v1*v2", 2)[1] == parse_polynomial("v1*v2", 2)
    label, polys = parse_homology_chain("[h] 1 | v1^2", 3)
    assert label == "h" and len(polys) == 2
    with pytest.raises(ParseError):
        parse_form_summands("[h](v1)^dv4", 3)
    with pytest.raises(ParseError):
        parse_form_summands("h(v1)", 3)
    with pytest.raises(ParseError):
        parse_koszul_tensor("1 | 1", 2)
