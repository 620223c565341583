import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import long_sqrt_weighted_sum
from unruh_qsl.errors import AccuracyError, DomainError
from unruh_qsl.specfun import (
    ASYMPTOTIC_ACCEL_FACTOR,
    R_MIN,
    ZETA_NEG_HALF_INTEGERS,
    Rapidity,
    _expansion_terms,
    accel_factor,
    accel_factor_closed,
    accel_factor_series,
    polylog_neg_half,
    rapidity_from_acceleration,
    rapidity_from_frequency,
)

# sum_{n=1}^{199} sqrt(n) 0.25**n with math.fsum (tail below 1e-110)
LI_QUARTER = 0.37626599344847705
# math.atanh(math.exp(-math.pi))
ATANH_EXP_MINUS_PI = 0.04324084828357019
# fsum of sqrt(n+1) 0.5**n, n < 200, divided by cosh(r)**3 = 2 sqrt 2
A_AT_HALF = 0.9526522645384734


def test_polylog_zero():
    assert polylog_neg_half(0.0) == 0.0


def test_polylog_quarter_golden():
    assert polylog_neg_half(0.25) == pytest.approx(LI_QUARTER, rel=1e-14)


def test_polylog_near_one_singular_behaviour():
    x = 1.0 - 1e-6
    brute = x * long_sqrt_weighted_sum(x)
    assert brute * (-math.log(x)) ** 1.5 == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-3)
    assert polylog_neg_half(x) == pytest.approx(brute, rel=1e-10)


@pytest.mark.parametrize("x", [1e-8, 0.1, 0.5, 0.9, 0.98, 0.99, 0.9900001, 0.995, 0.999, 1 - 1e-9])
def test_polylog_matches_mpmath(x):
    with mpmath.workdps(40):
        ref = float(mpmath.polylog(-0.5, mpmath.mpf(x)))
    assert polylog_neg_half(x) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("x", [-1e-3, 1.0, 1.5, float("nan")])
def test_polylog_domain(x):
    with pytest.raises(DomainError):
        polylog_neg_half(x)


def test_expansion_refuses_outside_convergence():
    with pytest.raises(AccuracyError):
        _expansion_terms(-7.0)
    with pytest.raises(AccuracyError):
        _expansion_terms(-1.0)  # converges, but k <= 3 is far from 1e-12


def test_zeta_constants():
    with mpmath.workdps(30):
        for k, value in enumerate(ZETA_NEG_HALF_INTEGERS):
            assert value == pytest.approx(float(mpmath.zeta(-0.5 - k)), rel=1e-15)


@given(st.floats(0.0, 0.9999), st.floats(0.0, 0.9999))
def test_polylog_monotone(x, y):
    lo, hi = sorted((x, y))
    assert polylog_neg_half(lo) <= polylog_neg_half(hi)


def test_polylog_small_argument_ratio():
    for x in (1e-4, 1e-8, 1e-12):
        assert polylog_neg_half(x) / x == pytest.approx(1.0, abs=2 * x)


def test_rapidity_validation():
    assert float(Rapidity(0.5)) == 0.5
    for bad in (-0.1, float("inf"), float("nan")):
        with pytest.raises(DomainError):
            Rapidity(bad)


def test_rapidity_from_frequency():
    assert rapidity_from_frequency(50).r < 1e-60
    assert rapidity_from_frequency(math.log(2) / math.pi).r == pytest.approx(math.atanh(0.5), rel=1e-15)
    assert rapidity_from_frequency(1.0).r == pytest.approx(ATANH_EXP_MINUS_PI, rel=1e-14)
    for bad in (0.0, -1.0):
        with pytest.raises(DomainError):
            rapidity_from_frequency(bad)


def test_rapidity_from_acceleration():
    assert rapidity_from_acceleration(2.0, -2.0).r == pytest.approx(ATANH_EXP_MINUS_PI, rel=1e-14)
    with pytest.raises(DomainError):
        rapidity_from_acceleration(0.0, 1.0)


def test_accel_factor_at_rest_is_exactly_one():
    assert accel_factor(0.0) == 1.0


def test_accel_factor_series_golden():
    r = math.atanh(math.sqrt(0.5))
    assert accel_factor_series(r) == pytest.approx(A_AT_HALF, rel=1e-14)
    assert accel_factor(r) == pytest.approx(A_AT_HALF, rel=1e-13)


def test_accel_factor_large_r_limit():
    assert accel_factor(8.0) == pytest.approx(ASYMPTOTIC_ACCEL_FACTOR, abs=1e-4)
    assert accel_factor(400.0) == pytest.approx(ASYMPTOTIC_ACCEL_FACTOR, rel=1e-15)


def test_accel_factor_branches_agree():
    grid = np.concatenate([np.geomspace(R_MIN / 2, 0.1, 25), np.linspace(0.1, 3.0, 60)])
    for r in grid:
        assert abs(accel_factor_closed(r) - accel_factor_series(r)) <= 1e-10


def test_accel_factor_bounds_and_monotone():
    grid = np.arange(0.0, 8.0 + 1e-9, 0.05)
    values = np.array([accel_factor(r) for r in grid])
    assert np.all(values <= 1.0)
    assert np.all(values >= 0.88)
    assert np.all(np.diff(values) <= 1e-12)


def test_accel_factor_closed_rejects_zero():
    with pytest.raises(DomainError):
        accel_factor_closed(0.0)


def test_accel_factor_series_gives_up_when_too_slow():
    with pytest.raises(AccuracyError):
        accel_factor_series(10.0)
