import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import mp_fraction, mp_log
from schinzel.exactnum import (
    CertifiedInterval,
    ball_volume_pi_form,
    decimal_str,
    interval_e,
    interval_log,
    interval_pi,
    interval_pi_power,
    interval_sqrt,
)

import mpmath


def test_log_one_is_exact_zero():
    iv = interval_log(1)
    assert iv.lo == 0 and iv.hi == 0


def test_log_two_value_and_width():
    iv = interval_log(2, 64)
    assert iv.width() <= Fraction(1, 10 ** 12)
    assert iv.contains(mp_log(Fraction(2)))


def test_log_half_is_negated_log_two():
    a = interval_log(Fraction(1, 2), 96)
    b = -interval_log(2, 96)
    assert a.intersects(b)
    assert a.width() < Fraction(1, 10 ** 20)


def test_log_rejects_bad_input():
    with pytest.raises(ValueError):
        interval_log(0)
    with pytest.raises(ValueError):
        interval_log(Fraction(-3, 7))
    with pytest.raises(ValueError):
        interval_log(2, bits=4)


def test_log_width_contract_and_oracle_soundness():
    rng = random.Random(20240601)
    for _ in range(10 ** 4):
        x = Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6))
        iv = interval_log(x, 128)
        truth = mp_log(x, 90)
        assert iv.contains(truth)
        assert abs(iv.mid() - truth) <= iv.width() / 2 + Fraction(1, 2 ** 200)
        # |truth - ln x| < 1e-80, far below the slack in the width budget
        bound = Fraction(2) ** (1 - 128) * max(Fraction(1), abs(truth))
        assert iv.width() <= bound


def test_log_huge_arguments():
    x = Fraction(1 + 2 ** 1000)
    iv = interval_log(x, 128)
    truth = mp_log(x, 400)
    assert iv.contains(truth)
    assert iv.width() <= Fraction(2) ** (1 - 128) * max(Fraction(1), abs(truth))


@given(st.fractions(min_value=Fraction(1, 10 ** 9), max_value=Fraction(10 ** 9)),
       st.integers(min_value=8, max_value=160))
@settings(max_examples=60, deadline=None)
def test_log_precision_monotone(x, bits):
    w1 = interval_log(x, bits).width()
    w2 = interval_log(x, bits + 16).width()
    assert w2 <= w1


def test_pi_and_e_against_oracle():
    pi = interval_pi(128)
    assert pi.contains(mp_fraction(mpmath.pi, 60))
    e = interval_e(128)
    assert e.contains(mp_fraction(mpmath.e, 60))
    assert pi.width() < Fraction(1, 2 ** 120)
    assert e.width() < Fraction(1, 2 ** 120)


def test_pi_power_halfsteps():
    assert interval_pi_power(0, 64) == CertifiedInterval.point(1)
    p2 = interval_pi_power(2, 128)
    assert p2.contains(mp_fraction(mpmath.pi, 60))
    p1 = interval_pi_power(1, 128)
    with mpmath.workdps(60):
        sqrt_pi = mpmath.sqrt(+mpmath.pi)
    assert p1.contains(mp_fraction(sqrt_pi, 60))
    with pytest.raises(ValueError):
        interval_pi_power(-1)


def test_sqrt_brackets():
    iv = interval_sqrt(2, 128)
    assert iv.lo * iv.lo <= 2 <= iv.hi * iv.hi
    assert iv.width() < Fraction(1, 2 ** 100)
    iv0 = interval_sqrt(Fraction(0))
    assert iv0.lo == iv0.hi == 0


def test_ball_volume_forms():
    assert ball_volume_pi_form(1) == (Fraction(2), 0)
    assert ball_volume_pi_form(2) == (Fraction(1), 2)
    r, h = ball_volume_pi_form(3)
    assert r == Fraction(4, 3) and h == 2
    r5, h5 = ball_volume_pi_form(5)
    assert r5 == Fraction(8, 15) and h5 == 4


def test_interval_arithmetic_containment():
    a = CertifiedInterval(Fraction(1, 3), Fraction(1, 2))
    b = CertifiedInterval(Fraction(-2), Fraction(3))
    prod = a * b
    for x in (Fraction(1, 3), Fraction(1, 2), Fraction(5, 12)):
        for y in (Fraction(-2), Fraction(0), Fraction(3)):
            assert prod.contains(x * y)
    assert (a + b).contains(Fraction(1, 3) - 2)
    assert (-a).hi == -a.lo


def test_even_power_of_straddling_interval():
    iv = CertifiedInterval(Fraction(-1), Fraction(2))
    sq = iv.ipow(2)
    assert sq.lo == 0 and sq.hi == 4
    cube = iv.ipow(3)
    assert cube.lo == -1 and cube.hi == 8


def test_reciprocal_requires_sign():
    with pytest.raises(ZeroDivisionError):
        CertifiedInterval(Fraction(-1), Fraction(1)).reciprocal()
    r = CertifiedInterval(Fraction(2), Fraction(4)).reciprocal()
    assert r.lo == Fraction(1, 4) and r.hi == Fraction(1, 2)


@given(st.fractions(min_value=Fraction(-100), max_value=Fraction(100)),
       st.fractions(min_value=Fraction(-100), max_value=Fraction(100)),
       st.fractions(min_value=Fraction(-100), max_value=Fraction(100)),
       st.fractions(min_value=Fraction(-100), max_value=Fraction(100)))
@settings(max_examples=120, deadline=None)
def test_interval_mul_soundness(a, b, x, y):
    lo1, hi1 = min(a, b), max(a, b)
    lo2, hi2 = min(x, y), max(x, y)
    i1 = CertifiedInterval(lo1, hi1)
    i2 = CertifiedInterval(lo2, hi2)
    mid1 = (lo1 + hi1) / 2
    mid2 = (lo2 + hi2) / 2
    assert (i1 * i2).contains(mid1 * mid2)
    assert (i1 + i2).contains(mid1 + mid2)


def test_decimal_str_rendering():
    assert decimal_str(Fraction(0)) == "0"
    assert decimal_str(Fraction(1), 5) == "1.0000e+0"
    assert decimal_str(Fraction(-1, 8), 4) == "-1.250e-1"
    s = decimal_str(Fraction(10) ** 33 * 5, 8)
    assert s == "5.0000000e+33"
    # deterministic
    assert decimal_str(Fraction(22, 7)) == decimal_str(Fraction(22, 7))


def test_rounding_is_outward():
    x = Fraction(10 ** 30 + 1, 3)
    iv = CertifiedInterval(x, x).round(64)
    assert iv.lo <= x <= iv.hi
