"""
Prime pairs: the sieve, theta-weighted and unweighted digit counts over (p, q) in P^2,
the logarithmic integral and the running error sup |pi(x) - li(x)|.
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional

import numpy as np
import scipy.special

from .base_counter import CountResult, Weight, WeightScheme
from .bruteforce_counter import DEFAULT_BRUTE_FORCE_CAP, accumulate_half_units
from .exact_arith import Params, k_max, validate_base_position
from .utils import check_guard, require, stopwatch

logger = logging.getLogger(__name__)

DEFAULT_SIEVE_GUARD = 10 ** 8
"""
Largest limit a sieve may be built for (about 100 MB of boolean table).
"""

_INT64_SAFE = 2 ** 63


def is_prime_table(limit: int) -> np.ndarray:
    '''
    Sieve of Eratosthenes.
    :return: boolean array of length limit + 1, True exactly at the primes
    '''
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return is_prime


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray
    log_weights: np.ndarray
    theta: np.ndarray

    @property
    def count(self) -> int:
        return len(self.primes)

    @property
    def theta_total(self) -> float:
        return math.fsum(self.log_weights)

    @cached_property
    def pi_prefix(self) -> np.ndarray:
        '''
        pi(x) for x = 0..limit.
        '''
        indicator = np.zeros(self.limit + 1, dtype=np.int64)
        indicator[self.primes] = 1
        return np.cumsum(indicator)

    @cached_property
    def theta_prefix(self) -> np.ndarray:
        '''
        theta(x) for x = 0..limit.
        '''
        weights = np.zeros(self.limit + 1, dtype=np.float64)
        weights[self.primes] = self.log_weights
        return np.cumsum(weights)

    def covers(self, bound: int) -> bool:
        return self.limit >= bound


def prime_sieve(bound: int, guard: int = DEFAULT_SIEVE_GUARD) -> PrimeTable:
    require(isinstance(bound, int) and bound >= 2, f'sieve limit must be an integer >= 2, not {bound}')
    if bound > guard:
        logger.error(f'sieve limit {bound} is above the guard {guard}')
    check_guard(bound, guard, 'sieve limit')
    primes = np.nonzero(is_prime_table(bound))[0].astype(np.int64)
    log_weights = np.log(primes.astype(np.float64))
    logger.debug(f'sieved {len(primes)} primes up to {bound}')
    return PrimeTable(bound, primes, log_weights, np.cumsum(log_weights))


def _table_for(bound: int, table: Optional[PrimeTable], guard: int) -> PrimeTable:
    if table is not None and table.covers(bound):
        return table
    return prime_sieve(max(bound, 2), guard)


def prime_counting(x: int, table: Optional[PrimeTable] = None, guard: int = DEFAULT_SIEVE_GUARD) -> int:
    if x < 2:
        return 0
    table = _table_for(x, table, guard)
    return int(np.searchsorted(table.primes, x, side='right'))


def _sums_per_denominator(params: Params, table: PrimeTable, prefix: np.ndarray):
    '''
    For each prime denominator q <= T, yields (q, array of prefix differences), one entry per v = kb + r:
    the numerators n with floor(b^i n/q) = v fill the interval [ceil(vq/b^i), ceil((v+1)q/b^i) - 1],
    so the primes among them are read off `prefix` at the two clipped endpoints.
    '''
    b, r, scale, bound = params.base, params.digit, params.scale, params.bound
    for q in table.primes[table.primes <= bound].tolist():
        top = scale * bound // q
        if top < r:
            continue
        dtype = np.int64 if (top + b + 1) * q < _INT64_SAFE else object
        v = np.arange((top - r) // b + 1, dtype=dtype) * b + r
        lo = np.minimum(np.maximum(-(-v * q // scale), 1), bound + 1).astype(np.int64)
        hi = np.minimum(-(-(v + 1) * q // scale) - 1, bound).astype(np.int64)
        hi = np.maximum(hi, lo - 1)
        yield q, prefix[hi] - prefix[lo - 1]


def theta_weighted_count(params: Params, exclude_diagonal: bool = False, table: Optional[PrimeTable] = None,
                         guard: int = DEFAULT_SIEVE_GUARD) -> CountResult:
    '''
    Sum of log(p) log(q) over prime pairs (p, q) in [1, T]^2 whose quotient p/q has digit r.

    :param exclude_diagonal: drop the pairs p = q (they all have quotient 1, so only r = 0 changes)
    :param table: a sieve covering T, reused when given
    '''
    table = _table_for(params.bound, table, guard)
    scheme = WeightScheme(Weight.PRIME_LOG_WEIGHTS, exclude_diagonal)
    with stopwatch() as elapsed:
        per_denominator = _sums_per_denominator(params, table, table.theta_prefix)
        terms = [math.log(q) * math.fsum(sums) for q, sums in per_denominator]
        if exclude_diagonal and params.digit == 0:
            count = prime_counting(params.bound, table)
            terms.extend(-w * w for w in table.log_weights[:count].tolist())
        value = max(math.fsum(terms), 0.0)
    return CountResult(params, scheme, value, k_max(params), elapsed[0])


def prime_pair_count(params: Params, exclude_diagonal: bool = False, table: Optional[PrimeTable] = None,
                     guard: int = DEFAULT_SIEVE_GUARD) -> CountResult:
    '''
    Number of prime pairs (p, q) in [1, T]^2 whose quotient p/q has digit r.
    '''
    table = _table_for(params.bound, table, guard)
    scheme = WeightScheme(Weight.PRIME_PAIRS, exclude_diagonal)
    with stopwatch() as elapsed:
        value = sum(int(sums.sum()) for _, sums in _sums_per_denominator(params, table, table.pi_prefix))
        if exclude_diagonal and params.digit == 0:
            value -= prime_counting(params.bound, table)
    return CountResult(params, scheme, value, k_max(params), elapsed[0])


def prime_pair_half_weight(base: int, position: int, bound: int, exclude_diagonal: bool = False,
                           table: Optional[PrimeTable] = None, cap: int = DEFAULT_BRUTE_FORCE_CAP,
                           guard: int = DEFAULT_SIEVE_GUARD) -> List[int]:
    '''
    Half-weight digit counts over prime pairs, in half-units (entry r is 2 w(r)).
    Enumerates all pi(T)^2 pairs, so T is held to the brute-force cap.
    '''
    validate_base_position(base, position)
    Params(base, 0, position, bound)  # range checks only
    check_guard(bound, cap, 'prime half-weight bound T')
    table = _table_for(bound, table, guard)
    primes = table.primes[table.primes <= bound]
    half_units = np.zeros(base, dtype=np.int64)
    for q in primes.tolist():
        numerators = primes[primes != q] if exclude_diagonal else primes
        accumulate_half_units(half_units, numerators, q, base, position)
    return [int(h) for h in half_units]


def li(x: float) -> float:
    '''
    Principal-value logarithmic integral, li(x) = Ei(log x), so li(2) = 1.0451637801...
    '''
    require(x >= 2, f'li(x) is only evaluated for x >= 2, not {x}')
    return float(scipy.special.expi(math.log(x)))


@dataclass(frozen=True)
class ErrorEnvelope:
    X: int
    value: float
    argmax_x: float
    rh_scale: float

    @property
    def ratio(self) -> float:
        '''
        value / (sqrt(X) log X), the size the envelope would have under the Riemann hypothesis.
        '''
        return self.value / self.rh_scale


def empirical_error_envelope(X: int, table: Optional[PrimeTable] = None,
                             guard: int = DEFAULT_SIEVE_GUARD) -> ErrorEnvelope:
    '''
    sup_{2 <= x <= X} |pi(x) - li(x)|.

    pi is a step function and li is increasing, so on each gap between consecutive primes the sup
    is reached at one of its ends: at a prime p (value k = pi(p)), just below it (value k - 1), or at X.
    '''
    require(isinstance(X, int) and X >= 2, f'X must be an integer >= 2, not {X}')
    table = _table_for(X, table, guard)
    primes = table.primes[table.primes <= X]
    li_at_primes = scipy.special.expi(np.log(primes.astype(np.float64)))
    index = np.arange(1, len(primes) + 1, dtype=np.float64)

    candidates = [np.abs(index - li_at_primes), np.abs(index[1:] - 1 - li_at_primes[1:]),
                  np.array([abs(len(primes) - li(X))])]
    positions = [primes.astype(np.float64), primes[1:].astype(np.float64), np.array([float(X)])]
    values = np.concatenate(candidates)
    xs = np.concatenate(positions)
    best = int(np.argmax(values))
    rh_scale = math.sqrt(X) * math.log(X)
    return ErrorEnvelope(X, float(values[best]), float(xs[best]), rh_scale)
