"""
The production counter. Pairs are grouped by k = floor(b^(i-1) n/m) into the triangles

    A_k = {(n, m) in [1, T]^2 : n/m in [(kb + r)/b^i, (kb + r + 1)/b^i)}
        = {(n, m) in [1, T]^2 : m in (n x_k, n y_k]},  x_k = b^i/(bk + r + 1), y_k = b^i/(bk + r)

and each triangle is counted exactly with two floor sums. There are about b^(i-1) T
triangles, so only the first K ~ sqrt(b^(i-1) T) of them are counted one by one; the
remaining quotient range n/m >= K/b^(i-1) only meets the rows m <= b^(i-1) T/K and is
counted one row at a time.
"""
import logging
import threading
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional, Tuple

import numpy as np

from .base_counter import BaseCounter, CountResult, ALL_PAIRS, COPRIME
from .exact_arith import Params, floor_sum, k_max, validate_digit_params
from .primes import DEFAULT_SIEVE_GUARD, is_prime_table
from .utils import UnsupportedVariantError, check_guard, require

logger = logging.getLogger(__name__)

DEFAULT_MOBIUS_GUARD = DEFAULT_SIEVE_GUARD
"""
Largest N the Mobius table may be built for (one int8 plus one int64 per entry).
"""


@dataclass(frozen=True)
class SlopePair:
    '''
    Exact slopes of the lines bounding A_k, kept unreduced as numerator/denominator.
    y_den is 0 for the unbounded triangle k = 0, r = 0.
    '''
    k: int
    x_num: int
    x_den: int
    y_num: int
    y_den: int

    @property
    def unbounded(self) -> bool:
        return self.y_den == 0

    def contains(self, n: int, m: int) -> bool:
        above_lower = m * self.x_den > n * self.x_num
        below_upper = self.unbounded or m * self.y_den <= n * self.y_num
        return above_lower and below_upper


def slopes(k: int, base: int, digit: int, position: int) -> SlopePair:
    validate_digit_params(base, digit, position)
    require(k >= 0, f'triangle index k must be >= 0, not {k}')
    scale = base ** position
    return SlopePair(k, scale, base * k + digit + 1, scale, base * k + digit)


def _clipped_line_sum(num: int, den: int, bound: int) -> int:
    '''
    sum_{n=1}^{T} min(T, floor(n num/den)); the line is vertical when den == 0.
    '''
    if den == 0:
        return bound * bound
    # floor(n num/den) <= T  <=>  n num < (T + 1) den
    unclipped = min(bound, ((bound + 1) * den - 1) // num)
    return floor_sum(unclipped, den, num, num) + bound * (bound - unclipped)


def count_triangle(k: int, params: Params) -> int:
    '''
    |A_k(T)| = sum_{n=1}^{T} min(T, floor(n y_k)) - min(T, floor(n x_k)), in O(log T).
    '''
    pair = slopes(k, params.base, params.digit, params.position)
    upper = _clipped_line_sum(pair.y_num, pair.y_den, params.bound)
    lower = _clipped_line_sum(pair.x_num, pair.x_den, params.bound)
    return upper - lower


def mobius_sieve(limit: int, guard: int = DEFAULT_MOBIUS_GUARD) -> np.ndarray:
    '''
    :return: int8 array `mu` of length limit + 1 with mu[d] the Mobius function of d (mu[0] = 0)
    '''
    require(limit >= 1, f'Mobius sieve limit must be >= 1, not {limit}')
    if limit > guard:
        logger.error(f'Mobius table up to {limit} is above the guard {guard}')
    check_guard(limit, guard, 'Mobius sieve limit')
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in np.nonzero(is_prime_table(limit))[0]:
        p = int(p)
        mu[p::p] *= -1
        mu[p * p::p * p] = 0
    return mu


class FloorSumCounter(BaseCounter):
    def __init__(self, mobius_guard: int = DEFAULT_MOBIUS_GUARD, split: Optional[int] = None,
                 *args, **kwargs) -> None:
        """
        :param mobius_guard: largest T for which the coprime count may build its Mobius table
        :param split: number of triangles counted one by one before switching to rows;
            defaults to isqrt(b^(i-1) T)
        """
        self.mobius_guard = mobius_guard
        self.split = split
        self._mertens = np.zeros(1, dtype=np.int64)
        self._mertens_lock = threading.Lock()

    def count_pairs(self, params: Params) -> CountResult:
        return self.timed_result(params, ALL_PAIRS, k_max(params), lambda: self._count(params))

    def _count(self, params: Params) -> int:
        last = k_max(params)
        split = self._split_point(params, last)
        logger.debug(f'count {params}: {split} triangles of {last + 1}, then rows')
        total = sum(count_triangle(k, params) for k in range(split))
        if split <= last:
            total += self._count_rows_beyond(params, split)
        return total

    def _split_point(self, params: Params, last: int) -> int:
        split = self.split if self.split is not None else isqrt(params.coarse_scale * params.bound)
        return min(max(split, 1), last + 1)

    @staticmethod
    def _count_rows_beyond(params: Params, split: int) -> int:
        '''
        Pairs in the triangles k >= split, i.e. with b^i n/m >= b * split, one row m at a time.

        The digit of n/m is r exactly when floor((b^i n - r m)/(bm)) - floor((b^i n - (r+1) m)/(bm)) = 1,
        so each row is the difference of two floor sums over n = n0..T.
        '''
        b, r, scale, coarse, bound = params.base, params.digit, params.scale, params.coarse_scale, params.bound
        total = 0
        for m in range(1, bound + 1):
            first = -(-split * m // coarse)
            if first > bound:
                break
            count = bound - first + 1
            offset = scale * first
            total += floor_sum(count, b * m, scale, offset - r * m)
            total -= floor_sum(count, b * m, scale, offset - (r + 1) * m)
        return total

    def count_upper_lower(self, params: Params) -> Tuple[int, int]:
        '''
        :return: (U, L), the pairs with n/m < 1 (triangles k < b^(i-1)) and with n/m >= 1
        '''
        upper_triangles = min(params.coarse_scale, k_max(params) + 1)
        upper = sum(count_triangle(k, params) for k in range(upper_triangles))
        return upper, self._count(params) - upper

    def count_coprime_pairs(self, params: Params) -> CountResult:
        return self.timed_result(params, COPRIME, k_max(params), lambda: self._count_coprime(params))

    def _count_coprime(self, params: Params) -> int:
        '''
        Mobius inversion of sum_{d <= T} |{(n, m) in [1, T/d]^2 : gcd = 1, digit r}| = Phi(T),
        grouping the d with equal floor(T/d) through the Mertens function.
        '''
        bound = params.bound
        mertens = self.mertens_table(bound)
        total = 0
        d = 1
        while d <= bound:
            quotient = bound // d
            d_last = bound // quotient
            coefficient = int(mertens[d_last] - mertens[d - 1])
            if coefficient:
                total += coefficient * self._count(params.with_bound(quotient))
            d = d_last + 1
        return total

    def mertens_table(self, limit: int) -> np.ndarray:
        '''
        Prefix sums M(0..N) of the Mobius function, built once and extended when a larger N is asked for.
        '''
        with self._mertens_lock:
            if len(self._mertens) <= limit:
                mu = mobius_sieve(limit, self.mobius_guard)
                self._mertens = np.cumsum(mu, dtype=np.int64)
            return self._mertens

    def count_boundary(self, params: Params, divisor: Optional[int] = None) -> int:
        '''
        b frac(n/m) = r means frac(n/m) = r1/m1 in lowest terms, r1 = r/(b, r), m1 = b/(b, r),
        so (n, m) = (d u, d m1) with d = gcd(n, m) and u = r1 (mod m1).
        '''
        if params.position != 1:
            raise UnsupportedVariantError(f'boundary counts are only defined for i = 1, not i = {params.position}')
        bound = params.bound
        common = gcd(params.base, params.digit)
        m1, r1 = params.base // common, params.digit // common

        def count_for_gcd(d):
            # u in [1, T/d] with u = r1 (mod m1)
            top = bound // d
            return (top - r1) // m1 - (-r1) // m1

        if divisor is not None:
            require(divisor >= 1, f'divisor must be >= 1, not {divisor}')
            return count_for_gcd(divisor) if divisor * m1 <= bound else 0
        return sum(count_for_gcd(d) for d in range(1, bound // m1 + 1))
