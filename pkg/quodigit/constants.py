"""
The limiting digit densities c(b, r; i) and the digamma function they are expressed with.

    c(b, r; i) = 1/(2b) + (b^(i-1)/2) * (psi((b^i + r + 1)/b) - psi((b^i + r)/b))
               = 1/(2b) + (b^(i-1)/2) * sum_{k >= b^(i-1)} b / ((bk + r)(bk + r + 1))

The series form is kept as an independent check with a certified tail bound.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exact_arith import validate_digit_params
from .utils import ParameterRangeError, require

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.57721566490153286061
"""
Euler-Mascheroni constant, -psi(1), to 20 significant digits.
"""

ZETA_2 = math.pi ** 2 / 6

ASYMPTOTIC_THRESHOLD = 10.0
"""
Arguments are shifted upwards with psi(x + 1) = psi(x) + 1/x until they reach this value.
"""

# B_2n / (2n) for n = 1..7, the coefficients of x^(-2n) in the asymptotic expansion
_ASYMPTOTIC_COEFFICIENTS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)

SERIES_CHUNK = 1_000_000


class Method(Enum):
    DIGAMMA_CLOSED_FORM = 'digamma-closed-form'
    TRUNCATED_SERIES = 'truncated-series'


@dataclass(frozen=True)
class DigitConstant:
    base: int
    digit: int
    position: int
    value: float
    method: Method
    tail_bound: float = 0.0


def digamma(x: float) -> float:
    '''
    psi(x) for real x > 0, accurate to about 1e-15 relative.
    '''
    _check_positive(x)
    value = 0.0
    while x < ASYMPTOTIC_THRESHOLD:
        value -= 1.0 / x
        x += 1.0
    inverse_square = 1.0 / (x * x)
    power = inverse_square
    correction = 0.0
    for coefficient in _ASYMPTOTIC_COEFFICIENTS:
        correction += coefficient * power
        power *= inverse_square
    return value + math.log(x) - 0.5 / x - correction


def digamma_difference(x: float, h: float) -> float:
    '''
    psi(x + h) - psi(x) without the cancellation of subtracting two digamma values.

    :param x: positive real
    :param h: positive step, typically 1/b
    '''
    _check_positive(x)
    _check_positive(h)
    parts = []
    while x < ASYMPTOTIC_THRESHOLD:
        parts.append(h / (x * (x + h)))
        x += 1.0
    y = x + h
    parts.append(math.log1p(h / x))
    parts.append(0.5 * h / (x * y))
    power_x = inverse_x = 1.0 / (x * x)
    power_y = inverse_y = 1.0 / (y * y)
    for coefficient in _ASYMPTOTIC_COEFFICIENTS:
        parts.append(coefficient * (power_x - power_y))
        power_x *= inverse_x
        power_y *= inverse_y
    return math.fsum(parts)


def _check_positive(x: float) -> None:
    if not (x > 0 and math.isfinite(x)):
        raise ParameterRangeError(f'argument must be a positive finite real, not {x}')


def digit_constant(base: int, digit: int, position: int) -> DigitConstant:
    validate_digit_params(base, digit, position)
    coarse = base ** (position - 1)
    difference = digamma_difference(coarse + digit / base, 1.0 / base)
    value = 1.0 / (2 * base) + 0.5 * coarse * difference
    return DigitConstant(base, digit, position, value, Method.DIGAMMA_CLOSED_FORM)


def digit_constant_series(base: int, digit: int, position: int, cutoff: int) -> DigitConstant:
    '''
    Truncates the series at k = cutoff.

    :return: a DigitConstant whose `tail_bound` certifies
        value <= c(b, r; i) <= value + tail_bound
    '''
    validate_digit_params(base, digit, position)
    coarse = base ** (position - 1)
    require(cutoff >= coarse, f'cutoff K must be >= b^(i-1) = {coarse}, not {cutoff}')
    partials = []
    for start in range(coarse, cutoff + 1, SERIES_CHUNK):
        k = np.arange(start, min(start + SERIES_CHUNK, cutoff + 1), dtype=np.float64)
        u = base * k + digit
        partials.append(math.fsum(base / (u * (u + 1.0))))
    value = 1.0 / (2 * base) + 0.5 * coarse * math.fsum(partials)
    tail_bound = 0.5 * coarse / cutoff
    logger.debug(f'series c({base}, {digit}; {position}) with K={cutoff}: {value} (+{tail_bound})')
    return DigitConstant(base, digit, position, value, Method.TRUNCATED_SERIES, tail_bound)


def coprime_constant(base: int, digit: int, position: int) -> float:
    '''
    Density of digit r among pairs visible from the origin, c(b, r; i) / zeta(2).
    '''
    return digit_constant(base, digit, position).value / ZETA_2
