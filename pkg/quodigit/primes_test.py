import math

import numpy as np
import pytest
import scipy.integrate

from .exact_arith import Params, digit_of_quotient, is_digit_boundary
from .primes import (ErrorEnvelope, empirical_error_envelope, is_prime_table, li, prime_counting, prime_pair_count,
                     prime_pair_half_weight, prime_sieve, theta_weighted_count)
from .utils import ParameterRangeError, ResourceGuardError


def trial_division_primes(limit):
    return [p for p in range(2, limit + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


@pytest.fixture(scope='module')
def table_2000():
    return prime_sieve(2000)


def test_prime_sieve_ten():
    table = prime_sieve(10)
    assert table.primes.tolist() == [2, 3, 5, 7]
    assert table.theta_total == pytest.approx(math.log(210), rel=1e-15)
    assert table.theta[-1] == pytest.approx(math.log(210), rel=1e-15)
    assert table.count == 4


def test_prime_sieve_two():
    assert prime_sieve(2).primes.tolist() == [2]


def test_prime_sieve_matches_trial_division(table_2000):
    assert table_2000.primes.tolist() == trial_division_primes(2000)
    assert np.all(np.diff(table_2000.theta) > 0)


def test_prime_sieve_million():
    assert prime_sieve(10 ** 6).count == 78498
    assert int(is_prime_table(10 ** 6).sum()) == 78498


def test_prime_sieve_guard():
    with pytest.raises(ResourceGuardError):
        prime_sieve(1001, guard=1000)
    with pytest.raises(ParameterRangeError):
        prime_sieve(1)


def test_prefix_tables(table_2000):
    assert table_2000.pi_prefix[1] == 0
    assert table_2000.pi_prefix[2] == 1
    assert table_2000.pi_prefix[100] == 25
    assert table_2000.theta_prefix[10] == pytest.approx(math.log(210))


@pytest.mark.parametrize('x, expected', [(0, 0), (1, 0), (2, 1), (10, 4), (100, 25), (1000, 168)])
def test_prime_counting(x, expected):
    assert prime_counting(x) == expected


@pytest.mark.parametrize('digit, exclude_diagonal, expected', [
    (0, False, math.log(2) ** 2 + math.log(3) ** 2),
    (5, False, math.log(2) * math.log(3)),
    (6, False, math.log(2) * math.log(3)),
    (0, True, 0.0),
    (1, False, 0.0),
])
def test_theta_weighted_count_small(digit, exclude_diagonal, expected):
    result = theta_weighted_count(Params(10, digit, 1, 3), exclude_diagonal)
    assert result.value == pytest.approx(expected, abs=1e-14)
    assert result.variant.exclude_diagonal is exclude_diagonal


@pytest.mark.parametrize('digit, exclude_diagonal, expected', [
    (0, True, 0),
    (6, True, 1),
    (5, False, 1),
    (0, False, 2),
])
def test_prime_pair_count_small(digit, exclude_diagonal, expected):
    assert prime_pair_count(Params(10, digit, 1, 3), exclude_diagonal).value == expected


@pytest.mark.parametrize('base, position, bound', [(10, 1, 500), (7, 2, 300), (2, 3, 257)])
def test_prime_counts_match_double_loop(table_2000, base, position, bound):
    primes = [p for p in table_2000.primes.tolist() if p <= bound]
    for digit in range(base):
        params = Params(base, digit, position, bound)
        pairs = [(p, q) for p in primes for q in primes if digit_of_quotient(p, q, base, position) == digit]
        weighted = math.fsum(math.log(p) * math.log(q) for p, q in pairs)
        assert prime_pair_count(params, table=table_2000).value == len(pairs)
        assert theta_weighted_count(params, table=table_2000).value == pytest.approx(weighted, rel=1e-9, abs=1e-9)


def test_prime_partition_identities(table_2000):
    bound = 2000
    pi = prime_counting(bound, table_2000)
    theta = table_2000.theta_total
    counts = [prime_pair_count(Params(10, r, 1, bound), table=table_2000).value for r in range(10)]
    weights = [theta_weighted_count(Params(10, r, 1, bound), table=table_2000).value for r in range(10)]
    assert sum(counts) == pi * pi
    assert math.fsum(weights) == pytest.approx(theta * theta, rel=1e-9)
    no_diagonal = [prime_pair_count(Params(10, r, 1, bound), True, table_2000).value for r in range(10)]
    assert sum(no_diagonal) == pi * pi - pi


def test_prime_pair_half_weight_small():
    # (2, 2), (3, 3) split between 0 and 9; 2/3 -> 6; 3/2 = 1.5 = 1.4999... between 5 and 4
    assert prime_pair_half_weight(10, 1, 3) == [2, 0, 0, 0, 1, 1, 2, 0, 0, 2]
    assert prime_pair_half_weight(10, 1, 3, exclude_diagonal=True) == [0, 0, 0, 0, 1, 1, 2, 0, 0, 0]


def test_prime_pair_half_weight_matches_scalar_definition(table_2000):
    base, position, bound = 17, 1, 300
    primes = [p for p in table_2000.primes.tolist() if p <= bound]
    expected = [0] * base
    for p in primes:
        for q in primes:
            if p == q:
                continue
            digit = digit_of_quotient(p, q, base, position)
            if is_digit_boundary(p, q, base, position):
                expected[digit] += 1
                expected[(digit - 1) % base] += 1
            else:
                expected[digit] += 2
    assert prime_pair_half_weight(base, position, bound, True, table_2000) == expected
    assert sum(expected) == 2 * (len(primes) ** 2 - len(primes))


def test_prime_pair_half_weight_cap():
    with pytest.raises(ResourceGuardError):
        prime_pair_half_weight(10, 1, 101, cap=100)


@pytest.mark.parametrize('x, expected', [(2, 1.045163780117492784845), (10, 6.1655995047872979375)])
def test_li_values(x, expected):
    assert li(x) == pytest.approx(expected, rel=1e-12)


def test_li_additivity():
    integral, _ = scipy.integrate.quad(lambda t: 1 / math.log(t), 10, 100, epsabs=1e-13, epsrel=1e-13)
    assert li(100) - li(10) == pytest.approx(integral, abs=1e-10)


def test_li_domain():
    with pytest.raises(ParameterRangeError):
        li(1.5)


def test_envelope_at_ten():
    envelope = empirical_error_envelope(10)
    assert envelope.value == pytest.approx(li(10) - 4, rel=1e-12)
    assert envelope.argmax_x == 10
    assert envelope.value >= abs(prime_counting(10) - li(10))


def test_envelope_at_two():
    envelope = empirical_error_envelope(2)
    assert envelope.value == pytest.approx(li(2) - 1, rel=1e-12)
    assert envelope.argmax_x == 2


def test_envelope_counts_left_limits():
    # just below 3, pi = 1 while li is already close to li(3) = 2.1636
    envelope = empirical_error_envelope(4)
    assert envelope.value == pytest.approx(li(3) - 1, rel=1e-12)
    assert envelope.argmax_x == 3


def test_envelope_is_nondecreasing(table_2000):
    values = [empirical_error_envelope(X, table_2000).value for X in (10, 100, 1000, 2000)]
    assert all(a <= b for a, b in zip(values, values[1:]))


@pytest.mark.slow
def test_envelope_is_nondecreasing_up_to_a_hundred_thousand():
    table = prime_sieve(10 ** 5)
    envelopes = [empirical_error_envelope(X, table) for X in (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5)]
    values = [envelope.value for envelope in envelopes]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert all(envelope.argmax_x <= envelope.X for envelope in envelopes)


def test_envelope_ratio():
    envelope = ErrorEnvelope(100, 5.0, 97.0, 10 * math.log(100))
    assert envelope.ratio == pytest.approx(5 / (10 * math.log(100)))
    assert empirical_error_envelope(100).rh_scale == pytest.approx(10 * math.log(100))
