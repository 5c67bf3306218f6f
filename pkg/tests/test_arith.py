import cmath
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from finorbits.arith import (
    AffineAngle,
    Angle,
    CoefficientOverflow,
    CycloNumber,
    NotRepresentable,
    common_order,
    cyclo_embed,
    cyclotomic_poly,
    format_rational,
    normalize_angle,
    normalize_order,
    parse_cell_value,
    trace_to_angle,
    two_cos,
)

ORDERS = [1, 3, 4, 5, 8, 12, 15, 20, 24]
small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def cyclo(draw, order=None):
    n = draw(st.sampled_from(ORDERS)) if order is None else order
    d = CycloNumber.rational(0, n).degree
    coeffs = draw(st.lists(small, min_size=d, max_size=d))
    x = CycloNumber.rational(0, n)
    z = CycloNumber.zeta(n)
    for c in reversed(coeffs):
        x = x * z + c
    return x


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-9


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_poly(15)) - 1 == 8


def test_order_normalization():
    assert normalize_order(6) == 3
    assert normalize_order(10) == 5
    assert normalize_order(12) == 12
    assert common_order(4, 6) == 12
    with pytest.raises(ValueError):
        normalize_order(0)


def test_zeta_powers():
    z = CycloNumber.zeta(12)
    assert z**12 == 1
    assert z**6 == -1
    assert z**4 != 1
    assert CycloNumber.zeta(4) ** 2 == -1


@given(cyclo(), cyclo())
def test_ring_axioms(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) - b == a
    assert close((a * b).to_complex(), a.to_complex() * b.to_complex())


@given(cyclo(order=12), cyclo(order=12), cyclo(order=12))
def test_distributive_and_associative(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(cyclo())
def test_inverse(a):
    assume(not a.is_zero())
    assert a * a.inverse() == 1
    assert a / a == 1


@given(cyclo(order=20), st.sampled_from([3, 7, 9, 11, 13, 17, 19]))
def test_galois_is_a_ring_map(a, k):
    b = a * a + 1
    assert (b).galois(k) == a.galois(k) * a.galois(k) + 1


@given(cyclo())
def test_norm_is_rational_and_multiplicative(a):
    assume(not a.is_zero())
    b = a + 1
    assume(not b.is_zero())
    assert (a * b).norm() == a.norm() * b.norm()


@given(cyclo(order=15))
def test_lift_preserves_value(a):
    assert a.lift(60) == a
    assert close(a.lift(60).to_complex(), a.to_complex())


def test_rational_embedding_and_equality_across_fields():
    assert CycloNumber.rational(Fraction(1, 2), 12) == Fraction(1, 2)
    assert CycloNumber.zeta(3) + CycloNumber.zeta(3, 2) == -1
    assert hash(CycloNumber.rational(3, 5)) == hash(CycloNumber.rational(3, 1))


@given(st.fractions(min_value=-4, max_value=4, max_denominator=30))
def test_exp_embedding(q):
    e = cyclo_embed(q)
    assert close(e.to_complex(), cmath.exp(1j * cmath.pi * float(q)))


@given(st.fractions(min_value=0, max_value=1, max_denominator=40))
def test_two_cos_round_trip(q):
    assert trace_to_angle(two_cos(q)) == Angle(q)
    assert close(two_cos(q).to_complex(), 2 * cmath.cos(cmath.pi * float(q)))


def test_trace_to_angle_rejects_other_values():
    with pytest.raises(NotRepresentable):
        trace_to_angle(3)
    with pytest.raises(NotRepresentable):
        trace_to_angle(CycloNumber.zeta(5))


@pytest.mark.parametrize(
    "raw,expected",
    [("5/3", "1/3"), ("-1/4", "1/4"), ("2", "0"), ("3/2", "1/2"), ("7", "1")],
)
def test_normalize_angle(raw, expected):
    assert normalize_angle(raw) == Angle(Fraction(expected))


def test_affine_parse_and_format():
    a = AffineAngle.parse("x+2y-z+1/3")
    assert a.coeff("x") == 1 and a.coeff("y") == 2 and a.coeff("z") == -1
    assert a.free == Fraction(1, 3)
    assert AffineAngle.parse(str(a)) == a
    assert AffineAngle.parse("x+y+7/3").free == Fraction(1, 3)
    assert parse_cell_value("2/3") == Angle(Fraction(2, 3))
    assert isinstance(parse_cell_value("x+1"), AffineAngle)
    with pytest.raises(ValueError):
        AffineAngle.parse("x/2")


def test_affine_arithmetic_and_substitution():
    x, y = AffineAngle.param("x"), AffineAngle.param("y")
    e = x + y.scale(2) + AffineAngle.const(Fraction(1, 2))
    assert e.substitute({"y": x}) == x.scale(3) + AffineAngle.const(Fraction(1, 2))
    assert e.evaluate({"x": Fraction(1, 3), "y": Fraction(1, 3)}) == Fraction(3, 2)
    assert (e - e).is_constant()


def test_coefficient_bound():
    AffineAngle.parse("4x").check_bound(4)
    with pytest.raises(CoefficientOverflow):
        AffineAngle.parse("5x-y").check_bound(4)


def test_rational_format():
    assert format_rational(Fraction(4, 6)) == "2/3"
    assert format_rational(Fraction(-3)) == "-3"
