"""Interval arithmetic wrapper: soundness and sign decisions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from habiro.exact import IntervalReal, PrecisionCapError, decide_sign

PI_REF = Fraction("3.14159265358979323846264338327950288419716939937510582097494459230781640628")


def test_from_rational_encloses():
    x = IntervalReal.from_rational(Fraction(1, 3), 64)
    assert x.lo_fraction() < Fraction(1, 3) < x.hi_fraction()
    assert x.width_fraction() < Fraction(1, 2**60)


def test_from_int_is_exact():
    x = IntervalReal.from_int(12345, 64)
    assert x.lo_fraction() == 12345 == x.hi_fraction()


def test_pi_encloses_reference():
    x = IntervalReal.pi(128)
    assert x.lo_fraction() < PI_REF < x.hi_fraction()
    assert x.width_fraction() < Fraction(1, 2**120)


def test_sqrt_squares_back():
    r = IntervalReal.from_int(2, 96).sqrt()
    sq = r * r
    assert sq.lo_fraction() <= 2 <= sq.hi_fraction()


def test_exp_log_roundtrip():
    x = IntervalReal.from_rational(Fraction(7, 3), 96)
    y = x.exp().log()
    assert y.lo_fraction() <= Fraction(7, 3) <= y.hi_fraction()


def test_trig_at_known_points():
    half_pi = IntervalReal.pi(96) / 2
    s = half_pi.sin()
    assert s.lo_fraction() <= 1 <= s.hi_fraction()
    c = half_pi.cos()
    assert c.contains_zero()


def test_abs_of_mixed_interval():
    x = IntervalReal.from_endpoints(Fraction(-2), Fraction(1), 64)
    a = abs(x)
    assert a.lo_fraction() == 0
    assert a.hi_fraction() >= 2


def test_mixed_precision_uses_larger():
    a = IntervalReal.from_rational(Fraction(1, 3), 64)
    b = IntervalReal.from_rational(Fraction(1, 7), 256)
    assert (a + b).prec == 256


def test_scalar_coercion():
    a = IntervalReal.from_rational(Fraction(1, 3), 64)
    b = 1 - a
    assert b.lo_fraction() < Fraction(2, 3) < b.hi_fraction()
    c = a * Fraction(3, 2)
    assert c.lo_fraction() < Fraction(1, 2) < c.hi_fraction()


def test_predicates():
    pos = IntervalReal.from_rational(Fraction(1, 10), 64)
    assert pos.is_positive() and not pos.is_negative() and not pos.contains_zero()
    neg = -pos
    assert neg.is_negative()
    zero = pos - pos
    assert zero.contains_zero()


def test_decide_sign_basic():
    gap = Fraction(1, 3) - Fraction(1, 4)
    assert decide_sign(lambda p: IntervalReal.from_rational(gap, p)) == 1
    assert decide_sign(lambda p: IntervalReal.from_rational(-gap, p)) == -1


def test_decide_sign_narrow_gap_escalates():
    # Difference of order 2**-100 needs more than the starting 64 bits.
    tiny = Fraction(1, 2**100)
    fn = lambda p: IntervalReal.from_rational(1 + tiny, p) - IntervalReal.from_rational(1, p)
    assert decide_sign(fn, start=64, cap=512) == 1


def test_decide_sign_cap_error_on_zero():
    fn = lambda p: IntervalReal.from_int(1, p) - IntervalReal.from_int(1, p)
    with pytest.raises(PrecisionCapError):
        decide_sign(fn, start=64, cap=128)


fractions_strategy = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=997
)


@settings(max_examples=50, deadline=None)
@given(a=fractions_strategy, b=fractions_strategy)
def test_product_soundness(a, b):
    x = IntervalReal.from_rational(a, 64)
    y = IntervalReal.from_rational(b, 64)
    p = x * y
    assert p.lo_fraction() <= a * b <= p.hi_fraction()


@settings(max_examples=50, deadline=None)
@given(a=fractions_strategy, b=fractions_strategy)
def test_sum_and_difference_soundness(a, b):
    x = IntervalReal.from_rational(a, 64)
    y = IntervalReal.from_rational(b, 64)
    s = x + y
    d = x - y
    assert s.lo_fraction() <= a + b <= s.hi_fraction()
    assert d.lo_fraction() <= a - b <= d.hi_fraction()
