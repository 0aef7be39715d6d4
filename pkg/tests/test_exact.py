from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hydroxi.exact import ONE, PI_SQUARED, ZERO, PiSquaredElement, Polynomial, pisq_eval, rat, rat_div

ZETA2_20 = "1.6449340668482264365"  # zeta(2), independent reference value


def test_rational_basics():
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)
    half = rat(2, 4)
    assert (half.numerator, half.denominator) == (1, 2)
    with pytest.raises(ZeroDivisionError):
        rat_div(Fraction(1, 3), 0)


def test_pisq_examples():
    sixth = PI_SQUARED * Fraction(1, 6)
    prod = sixth * 6
    assert prod.num_poly == (0, 1) and prod.den_poly == (1,)
    one_plus = ONE + PI_SQUARED
    assert (one_plus - one_plus).is_zero()
    inv = sixth.inverse()
    assert inv.num_poly == (6,) and inv.den_poly == (0, 1)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
    with pytest.raises(ZeroDivisionError):
        PiSquaredElement([1], [0])


def test_pisq_eval():
    with mpmath.workdps(40):
        value = pisq_eval(PI_SQUARED / 6, 20)
        assert abs(value - mpmath.mpf(ZETA2_20)) < mpmath.mpf(10) ** -19
        assert abs(value - mpmath.zeta(2)) < mpmath.mpf(10) ** -19
    assert pisq_eval(PiSquaredElement.from_rational(Fraction(1, 2)), 15) == mpmath.mpf("0.5")
    assert pisq_eval(PiSquaredElement([3, 0], [1]), 15) == 3
    with pytest.raises(ValueError):
        pisq_eval(ONE, 10)


def test_normalization_is_canonical():
    # (tau^2 - 1) / (2 tau + 2) reduces to (tau - 1) / 2
    e = PiSquaredElement([-1, 0, 1], [2, 2])
    assert e.num_poly == (Fraction(-1, 2), Fraction(1, 2)) and e.den_poly == (1,)
    assert e.normalized().num_poly == e.num_poly and e.normalized().den_poly == e.den_poly


def test_sign_and_order():
    assert (PI_SQUARED - Fraction(9869604401, 10**9)).sign() == 1
    assert (PI_SQUARED - Fraction(9869604402, 10**9)).sign() == -1
    assert PI_SQUARED / 6 < Fraction(165, 100)
    assert ZERO.sign() == 0


def test_text_round_trip():
    for text in ["(512/243)/(pi^2)", "2/3 + 1/18*pi^2", "0", "3 - pi^2", "(1)/(6 + pi^2)"]:
        e = PiSquaredElement.parse(text)
        assert str(e) == text
        assert PiSquaredElement.parse(str(e)) == e
    with pytest.raises(ValueError):
        PiSquaredElement.parse("1*pi^3")


def test_polynomial_division():
    p = Polynomial([1, 2, 3, 4])
    d = Polynomial([1, 1])
    q, r = p.divmod(d)
    assert q * d + r == p
    assert r.degree < d.degree


small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def elements(draw):
    num = [draw(small) for _ in range(draw(st.integers(1, 3)))]
    den = [draw(small) for _ in range(draw(st.integers(1, 2)))]
    if all(c == 0 for c in den):
        den = [Fraction(1)]
    return PiSquaredElement(num, den)


@settings(max_examples=60, deadline=None)
@given(elements(), elements(), elements())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == ZERO
    if not a.is_zero():
        assert a * a.inverse() == ONE


@settings(max_examples=40, deadline=None)
@given(elements(), elements())
def test_eval_is_additive(a, b):
    with mpmath.workdps(40):
        lhs = pisq_eval(a + b, 25)
        rhs = pisq_eval(a, 25) + pisq_eval(b, 25)
        assert abs(lhs - rhs) <= mpmath.mpf(10) ** -24 * max(1, abs(lhs))


@settings(max_examples=40, deadline=None)
@given(elements())
def test_normalize_idempotent(a):
    b = a.normalized()
    assert b.num_poly == a.num_poly and b.den_poly == a.den_poly
    assert b.den.leading == 1
