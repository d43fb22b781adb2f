from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Union

from .exact_arith import Params
from .utils import ParameterRangeError, stopwatch


class Weight(Enum):
    ALL_PAIRS = 'all_pairs'
    PRIME_LOG_WEIGHTS = 'prime_log_weights'
    PRIME_PAIRS = 'prime_pairs'
    COPRIME = 'coprime'
    HALF_BOUNDARY = 'half_boundary'


PRIME_WEIGHTS = (Weight.PRIME_LOG_WEIGHTS, Weight.PRIME_PAIRS)


@dataclass(frozen=True)
class WeightScheme:
    '''
    Selects the weight w(n, m) a pair contributes.

    `support` only applies to HALF_BOUNDARY and names the pair set the half weights
    are spread over: every pair (ALL_PAIRS), visible pairs (COPRIME) or prime pairs
    (PRIME_PAIRS). `exclude_diagonal` drops p = q and only applies to prime pair sets.
    '''
    tag: Weight = Weight.ALL_PAIRS
    exclude_diagonal: bool = False
    support: Weight = Weight.ALL_PAIRS

    def __post_init__(self):
        if self.support not in (Weight.ALL_PAIRS, Weight.COPRIME, Weight.PRIME_PAIRS):
            raise ParameterRangeError(f'half weights cannot be spread over {self.support.value}')
        if self.exclude_diagonal and not self.over_primes:
            raise ParameterRangeError(f'exclude_diagonal only applies to prime schemes, not {self.name}')

    @property
    def over_primes(self) -> bool:
        if self.tag is Weight.HALF_BOUNDARY:
            return self.support is Weight.PRIME_PAIRS
        return self.tag in PRIME_WEIGHTS

    @property
    def name(self) -> str:
        if self.tag is Weight.HALF_BOUNDARY and self.support is not Weight.ALL_PAIRS:
            return f'{self.tag.value}/{self.support.value}'
        return self.tag.value


ALL_PAIRS = WeightScheme()
COPRIME = WeightScheme(Weight.COPRIME)


@dataclass
class CountResult:
    '''
    `value` is an int for unweighted counts, a Fraction with denominator 1 or 2 for
    half-weight counts and a float for log-weighted prime counts.
    '''
    params: Params
    variant: WeightScheme
    value: Union[int, Fraction, float]
    k_max_used: int
    elapsed_ns: int = 0
    extra: dict = field(default_factory=dict)


class BaseCounter(ABC):
    @abstractmethod
    def count_pairs(self, params: Params) -> CountResult:
        """
        Counts the pairs (n, m) in [1, T]^2 whose quotient n/m has digit r at position i.
        :param params: (b, r, i, T)
        :return: CountResult with an exact integer value
        """
        raise NotImplementedError()

    @abstractmethod
    def count_coprime_pairs(self, params: Params) -> CountResult:
        """
        As `count_pairs`, restricted to pairs with gcd(n, m) = 1.
        """
        raise NotImplementedError()

    @abstractmethod
    def count_boundary(self, params: Params, divisor: Optional[int] = None) -> int:
        """
        Counts the pairs with b * frac(n/m) = r exactly, for i = 1 only.
        :param params: (b, r, 1, T)
        :param divisor: if not None, only pairs with gcd(n, m) equal to it are counted
        :return: exact count
        """
        raise NotImplementedError()

    def digit_counts(self, base: int, position: int, bound: int, coprime: bool = False) -> List[int]:
        '''
        One count per digit r = 0..b-1; sums to T^2 (or to the visible pair count).
        '''
        count = self.count_coprime_pairs if coprime else self.count_pairs
        return [count(Params(base, digit, position, bound)).value for digit in range(base)]

    @staticmethod
    def timed_result(params: Params, variant: WeightScheme, k_max_used: int, compute) -> CountResult:
        with stopwatch() as elapsed:
            value = compute()
        return CountResult(params, variant, value, k_max_used, elapsed[0])
