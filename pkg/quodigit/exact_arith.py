"""
Exact integer primitives: base-b digits of rational quotients and the floor-sum kernel.

Nothing in here touches floating point. Python integers are unbounded, so the
wide-integer policy is enforced as an explicit contract: scaled quotients and
floor sums must fit a signed 128-bit integer, and `Params` keeps b^i * T below 2^62
so that the vectorized int64 paths never wrap.
"""
import logging
from dataclasses import dataclass, replace

import numpy as np

from .utils import ParameterRangeError, require

logger = logging.getLogger(__name__)

WIDE_INT_LIMIT = 2 ** 127
"""
Exclusive magnitude bound of the signed 128-bit window every exact intermediate must fit.
"""

MAX_SCALED_BOUND = 2 ** 62
"""
Exclusive bound on b^i * T accepted by `Params`, and on b^i * n in the int64 vectorized digit path.
"""


@dataclass(frozen=True)
class Params:
    base: int
    digit: int
    position: int
    bound: int

    def __post_init__(self):
        validate_digit_params(self.base, self.digit, self.position)
        require(isinstance(self.bound, int) and self.bound >= 1, f'bound T must be an integer >= 1, not {self.bound}')
        scaled = self.scale * self.bound
        if scaled >= MAX_SCALED_BOUND:
            raise ParameterRangeError(
                f'b^i * T = {self.base}^{self.position} * {self.bound} does not fit below 2^62')

    @property
    def scale(self) -> int:
        return self.base ** self.position

    @property
    def coarse_scale(self) -> int:
        return self.base ** (self.position - 1)

    def with_bound(self, bound: int) -> 'Params':
        return replace(self, bound=bound)


def k_max(params: Params) -> int:
    '''
    Largest k whose triangle can be non-empty: (kb + r)/b^i <= n/m <= T.
    '''
    return (params.scale * params.bound - params.digit) // params.base


def validate_base_position(base: int, position: int) -> None:
    require(isinstance(base, int) and base >= 2, f'base b must be an integer >= 2, not {base}')
    require(isinstance(position, int) and position >= 1, f'position i must be an integer >= 1, not {position}')


def validate_digit_params(base: int, digit: int, position: int) -> None:
    validate_base_position(base, position)
    require(isinstance(digit, int) and 0 <= digit < base, f'digit r must be in [0, {base - 1}], not {digit}')


def _scaled_numerator(n: int, m: int, base: int, position: int) -> int:
    require(n >= 1 and m >= 1, f'n and m must be positive, not ({n}, {m})')
    validate_base_position(base, position)
    scaled = base ** position * n
    if scaled >= WIDE_INT_LIMIT:
        raise ParameterRangeError(f'b^i * n = {base}^{position} * {n} overflows the 128-bit window')
    return scaled


def digit_of_quotient(n: int, m: int, base: int, position: int) -> int:
    '''
    :return: the `position`-th base-`base` digit after the radix point of n/m,
        floor(b^i n/m) - b floor(b^(i-1) n/m)
    '''
    scaled = _scaled_numerator(n, m, base, position)
    return scaled // m - base * (scaled // base // m)


def is_digit_boundary(n: int, m: int, base: int, position: int) -> bool:
    '''
    True when b^i n/m is an integer, i.e. the expansion of n/m terminates at or before
    `position` and also has a representation ending in repeated (b - 1) digits.
    '''
    return _scaled_numerator(n, m, base, position) % m == 0


def digits_of_quotients(numerators: np.ndarray, m: int, base: int, position: int) -> np.ndarray:
    '''
    Vectorized `digit_of_quotient` over an int64 array of numerators sharing the denominator m.
    '''
    validate_base_position(base, position)
    numerators = np.asarray(numerators, dtype=np.int64)
    scale = base ** position
    if numerators.size and scale * int(numerators.max()) >= MAX_SCALED_BOUND:
        raise ParameterRangeError(f'b^i * n overflows int64 for b={base}, i={position}')
    return (scale * numerators // m) % base


def floor_sum(count: int, modulus: int, mul: int, add: int) -> int:
    '''
    Sum of floor((mul * j + add) / modulus) for j in [0, count), in O(log(max(mul, modulus))).

    Each round strips the integral parts of mul/modulus and add/modulus, then swaps the
    roles of the axes (the Euclidean reduction of the lattice points under the line).
    '''
    require(modulus >= 1, f'modulus must be >= 1, not {modulus}')
    require(count >= 0 and mul >= 0 and add >= 0,
            f'count, mul and add must be non-negative, not ({count}, {mul}, {add})')
    total = 0
    n, m, a, b = count, modulus, mul, add
    while True:
        if a >= m:
            total += n * (n - 1) // 2 * (a // m)
            a %= m
        if b >= m:
            total += n * (b // m)
            b %= m
        y_max = a * n + b
        if y_max < m:
            break
        n, b = y_max // m, y_max % m
        m, a = a, m
    if total >= WIDE_INT_LIMIT:
        raise ParameterRangeError(f'floor_sum({count}, {modulus}, {mul}, {add}) overflows the 128-bit window')
    return total
