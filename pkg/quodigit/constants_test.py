import math

import numpy as np
import pytest
import scipy.integrate
import scipy.special
from hypothesis import given, settings, strategies as st

from .constants import (EULER_GAMMA, Method, ZETA_2, coprime_constant, digamma, digamma_difference, digit_constant,
                        digit_constant_series)
from .utils import ParameterRangeError

DIGAMMA_GRID = [0.01, 0.1, 0.25, 0.5, 0.9, 1.0, 1.5, 2.0, 3.3, 7.5, 9.99, 10.0, 10.01, 42.0, 1e3, 1e6]


def test_digamma_at_one():
    assert abs(digamma(1.0) + EULER_GAMMA) <= 1e-14


def test_digamma_at_two():
    assert digamma(2.0) == pytest.approx(1 - EULER_GAMMA, abs=1e-14)


def test_digamma_at_half():
    assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2 * math.log(2), abs=1e-13)


@pytest.mark.parametrize('x', DIGAMMA_GRID)
def test_digamma_matches_scipy(x):
    assert digamma(x) == pytest.approx(float(scipy.special.digamma(x)), rel=1e-13, abs=1e-13)


@pytest.mark.parametrize('x', DIGAMMA_GRID)
def test_digamma_recurrence(x):
    assert abs(digamma(x + 1) - digamma(x) - 1 / x) <= 1e-12 * max(1.0, 1 / x)


@given(st.floats(min_value=0.05, max_value=1e4))
def test_digamma_recurrence_property(x):
    assert abs(digamma(x + 1) - digamma(x) - 1 / x) <= 1e-12 * max(1.0, 1 / x)


@pytest.mark.parametrize('x', [0.0, -1.0, -0.5, float('nan'), float('inf')])
def test_digamma_domain(x):
    with pytest.raises(ParameterRangeError):
        digamma(x)


@pytest.mark.parametrize('x, h', [(1.0, 0.1), (0.3, 0.5), (10.0, 1 / 30), (1000.05, 0.05), (100.0, 1.0)])
def test_digamma_difference_matches_scipy(x, h):
    expected = float(scipy.special.digamma(x + h) - scipy.special.digamma(x))
    assert digamma_difference(x, h) == pytest.approx(expected, rel=1e-12)


def test_digamma_difference_unit_step_is_reciprocal():
    for x in (0.5, 3.0, 25.0):
        assert digamma_difference(x, 1.0) == pytest.approx(1 / x, rel=1e-13)


@pytest.mark.parametrize('base, digit, position, expected', [
    (10, 0, 1, 0.12673036224522803),
    (10, 1, 1, 0.11735752190944425),
    (2, 0, 1, 0.5568528194400547),
    (30, 0, 1, 0.043433848264415340),
    (30, 29, 1, 0.027529369277805433),
])
def test_digit_constant_values(base, digit, position, expected):
    constant = digit_constant(base, digit, position)
    assert constant.value == pytest.approx(expected, abs=1e-15)
    assert constant.method is Method.DIGAMMA_CLOSED_FORM


def test_digit_constant_base_two_closed_form():
    assert digit_constant(2, 0, 1).value == pytest.approx(1.25 - math.log(2), abs=1e-15)


def test_zero_is_the_most_likely_first_digit():
    c = [digit_constant(10, r, 1).value for r in range(10)]
    assert c[0] > 0.1
    assert c[0] == max(c)


@pytest.mark.parametrize('base', range(2, 37))
def test_first_digit_constants_strictly_decrease(base):
    c = [digit_constant(base, r, 1).value for r in range(base)]
    assert all(a - b > 1e-14 for a, b in zip(c, c[1:]))


@pytest.mark.parametrize('base', range(2, 37))
@pytest.mark.parametrize('position', [1, 2, 3])
def test_digit_constants_sum_to_one(base, position):
    total = math.fsum(digit_constant(base, r, position).value for r in range(base))
    assert abs(total - 1) <= 1e-12


def test_digit_constants_approach_uniform_deeper_in():
    spread = [max(digit_constant(10, r, i).value for r in range(10)) - 0.1 for i in (1, 2, 3)]
    assert spread[0] > spread[1] > spread[2] > 0


@pytest.mark.parametrize('base, digit, position', [(1, 0, 1), (10, 10, 1), (10, -1, 1), (10, 0, 0)])
def test_digit_constant_rejects_bad_parameters(base, digit, position):
    with pytest.raises(ParameterRangeError):
        digit_constant(base, digit, position)


def test_series_with_large_cutoff():
    series = digit_constant_series(10, 0, 1, 10 ** 6)
    assert series.method is Method.TRUNCATED_SERIES
    assert abs(series.value - digit_constant(10, 0, 1).value) <= 1e-6


def test_series_tail_interval_contains_closed_form():
    series = digit_constant_series(10, 9, 1, 10)
    closed = digit_constant(10, 9, 1).value
    assert series.value <= closed <= series.value + series.tail_bound


def test_series_direct_summation():
    terms = [10 / ((10 * k + 9) * (10 * k + 10)) for k in range(1, 11)]
    assert digit_constant_series(10, 9, 1, 10).value == pytest.approx(0.05 + 0.5 * math.fsum(terms), abs=1e-15)


def test_series_deeper_position():
    series = digit_constant_series(3, 1, 2, 10 ** 4)
    assert abs(series.value - digit_constant(3, 1, 2).value) <= (3 / 2) / 10 ** 4
    assert series.tail_bound == pytest.approx(1.5 / 10 ** 4)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 36), st.integers(1, 3), st.data())
def test_series_stays_within_its_tail_bound(base, position, data):
    digit = data.draw(st.integers(0, base - 1))
    cutoff = data.draw(st.integers(base ** (position - 1), 10 ** 5))
    series = digit_constant_series(base, digit, position, cutoff)
    closed = digit_constant(base, digit, position).value
    assert series.value - 1e-12 <= closed <= series.value + series.tail_bound + 1e-12


def test_series_rejects_cutoff_below_start():
    with pytest.raises(ParameterRangeError):
        digit_constant_series(10, 0, 3, 50)


@pytest.mark.parametrize('base, digit, position', [(10, 0, 1), (10, 7, 1), (3, 2, 2), (7, 3, 1)])
def test_digit_constant_matches_integral(base, digit, position):
    '''
    c = 1/(2b) + (b^i/2) * int_0^1 t^(b^i + r - 1) (1 - t)/(1 - t^b) dt
    '''
    scale = base ** position

    def integrand(t):
        return t ** (scale + digit - 1) / sum(t ** j for j in range(base))

    integral, _ = scipy.integrate.quad(integrand, 0.0, 1.0, epsabs=1e-14, epsrel=1e-13, limit=200)
    expected = 1 / (2 * base) + scale / 2 * integral
    assert digit_constant(base, digit, position).value == pytest.approx(expected, abs=1e-10)


def test_coprime_constant():
    assert coprime_constant(10, 0, 1) == pytest.approx(digit_constant(10, 0, 1).value * 6 / math.pi ** 2, rel=1e-15)
    assert coprime_constant(2, 1, 1) == pytest.approx((1 - digit_constant(2, 0, 1).value) * 6 / math.pi ** 2,
                                                      abs=1e-14)
    assert ZETA_2 == pytest.approx(math.pi ** 2 / 6)


def test_series_chunks_agree_with_single_pass():
    k = np.arange(1, 2001, dtype=np.float64)
    u = 10 * k + 3
    single = 0.05 + 0.5 * math.fsum(10 / (u * (u + 1)))
    assert digit_constant_series(10, 3, 1, 2000).value == pytest.approx(single, abs=1e-15)
