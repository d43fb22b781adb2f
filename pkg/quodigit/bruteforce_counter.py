import logging
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .base_counter import BaseCounter, CountResult, ALL_PAIRS, COPRIME
from .exact_arith import Params, digits_of_quotients, k_max, validate_base_position
from .utils import UnsupportedVariantError, check_guard, require

logger = logging.getLogger(__name__)

DEFAULT_BRUTE_FORCE_CAP = 5000
"""
Largest T the O(T^2) enumeration accepts (25 million digit evaluations).
"""


def accumulate_half_units(half_units: np.ndarray, numerators: np.ndarray, m: int, base: int, position: int) -> None:
    '''
    Adds the half-weights of the pairs (n, m), n in `numerators`, to `half_units` (one slot per digit).

    A pair whose b^i n/m is an integer has two expansions (1 = 0.999...), so it gives one
    half-unit to its digit r and one to (r - 1) mod b; every other pair gives two to r.
    '''
    scaled = base ** position * numerators
    digits = (scaled // m) % base
    boundary = scaled % m == 0
    half_units += 2 * np.bincount(digits[~boundary], minlength=base)
    half_units += np.bincount(digits[boundary], minlength=base)
    half_units += np.bincount((digits[boundary] - 1) % base, minlength=base)


class BruteForceCounter(BaseCounter):
    '''
    Enumerates every pair, one denominator row at a time. Slow, simple and independent of the
    floor-sum machinery, which makes it the oracle the production counter is checked against.
    '''
    def __init__(self, cap: int = DEFAULT_BRUTE_FORCE_CAP, *args, **kwargs) -> None:
        """
        :param cap: largest T accepted; larger bounds raise ResourceGuardError
        """
        self.cap = cap

    def _check_cap(self, bound: int) -> None:
        if bound > self.cap:
            logger.error(f'refusing O(T^2) enumeration for T={bound}')
        check_guard(bound, self.cap, 'brute-force bound T')

    def _rows(self, base: int, position: int, bound: int, coprime: bool) -> Iterator[Tuple[int, np.ndarray]]:
        '''
        :return: iterator of (m, digits of n/m for the counted n in [1, T])
        '''
        self._check_cap(bound)
        numerators = np.arange(1, bound + 1, dtype=np.int64)
        for m in range(1, bound + 1):
            digits = digits_of_quotients(numerators, m, base, position)
            if coprime:
                digits = digits[np.gcd(numerators, m) == 1]
            yield m, digits

    def digit_histogram(self, base: int, position: int, bound: int, coprime: bool = False) -> np.ndarray:
        '''
        :return: int64 array of length b, the count of every digit at once
        '''
        Params(base, 0, position, bound)  # range checks only
        histogram = np.zeros(base, dtype=np.int64)
        for _, digits in self._rows(base, position, bound, coprime):
            histogram += np.bincount(digits, minlength=base)
        return histogram

    def digit_counts(self, base: int, position: int, bound: int, coprime: bool = False) -> List[int]:
        return [int(count) for count in self.digit_histogram(base, position, bound, coprime)]

    def count_pairs(self, params: Params) -> CountResult:
        return self.timed_result(params, ALL_PAIRS, k_max(params), lambda: self._count(params, coprime=False))

    def count_pairs_bruteforce(self, params: Params) -> CountResult:
        return self.count_pairs(params)

    def count_coprime_pairs(self, params: Params) -> CountResult:
        return self.timed_result(params, COPRIME, k_max(params), lambda: self._count(params, coprime=True))

    def _count(self, params: Params, coprime: bool) -> int:
        rows = self._rows(params.base, params.position, params.bound, coprime)
        return sum(int(np.count_nonzero(digits == params.digit)) for _, digits in rows)

    def count_boundary(self, params: Params, divisor: Optional[int] = None) -> int:
        if params.position != 1:
            raise UnsupportedVariantError(f'boundary counts are only defined for i = 1, not i = {params.position}')
        if divisor is not None:
            require(divisor >= 1, f'divisor must be >= 1, not {divisor}')
        self._check_cap(params.bound)
        b, r = params.base, params.digit
        numerators = np.arange(1, params.bound + 1, dtype=np.int64)
        total = 0
        for m in range(1, params.bound + 1):
            # b frac(n/m) = r  <=>  b n = r m (mod b m)
            hits = (b * numerators) % (b * m) == r * m
            if divisor is not None:
                hits &= np.gcd(numerators, m) == divisor
            total += int(np.count_nonzero(hits))
        return total

    def count_pairs_half_weight(self, base: int, position: int, bound: int, coprime: bool = False) -> List[int]:
        '''
        Half-weight digit counts, in half-units: entry r is 2 w(r), so the entries sum to 2 T^2
        (twice the number of visible pairs when `coprime`).
        '''
        validate_base_position(base, position)
        Params(base, 0, position, bound)  # range checks only
        self._check_cap(bound)
        half_units = np.zeros(base, dtype=np.int64)
        numerators = np.arange(1, bound + 1, dtype=np.int64)
        for m in range(1, bound + 1):
            counted = numerators[np.gcd(numerators, m) == 1] if coprime else numerators
            accumulate_half_units(half_units, counted, m, base, position)
        logger.debug(f'half weights b={base} i={position} T={bound}: {half_units.tolist()}')
        return [int(h) for h in half_units]

