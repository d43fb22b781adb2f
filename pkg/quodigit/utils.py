import time
from contextlib import contextmanager
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
import png
import scipy.ndimage

Number = Union[int, Fraction, float]

JSON_SAFE_INTEGER = 2 ** 53
"""
Largest integer a JSON consumer is guaranteed to read back exactly; `emit` refuses counts above it.
"""


class ParameterRangeError(ValueError):
    pass


class UnsupportedVariantError(ParameterRangeError):
    pass


class ResourceGuardError(RuntimeError):
    pass


def require(condition: bool, message: str) -> None:
    '''
    Helper function that should be used when validating a caller supplied
    parameter, which should raise our standard exception upon a failure.
    '''
    if not condition:
        raise ParameterRangeError(message)


def check_guard(value: int, guard: int, what: str) -> None:
    if value > guard:
        raise ResourceGuardError(f'{what} {value} exceeds the configured guard {guard}')


@contextmanager
def stopwatch():
    '''
    Yields a one element list that holds the elapsed nanoseconds once the block exits.
    '''
    elapsed = [0]
    start = time.perf_counter_ns()
    try:
        yield elapsed
    finally:
        elapsed[0] = time.perf_counter_ns() - start


def format_real(value: float) -> str:
    return format(value, '.17g')


def format_count(value: Number) -> str:
    '''
    Counts are exact integers, exact multiples of 1/2 (half-weight bins) or reals (log weights).
    '''
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        if value.denominator != 2:
            raise ValueError(f'half-weight counts must be multiples of 1/2, not {value}')
        return f'{value.numerator // 2}.5'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_real(float(value))


def half_units_to_fractions(half_units: Sequence[int]):
    return [Fraction(int(h), 2) for h in half_units]


def process_and_write_png(bins: Sequence[float], overlay: Sequence[float], png_path: str,
                          size: int = 400) -> None:
    '''
    :param bins: normalized bar heights, one per digit
    :param overlay: theoretical value per digit, drawn as a dark marker row across each bar
    :param png_path: Output path for the histogram PNG

    Draws one column per digit, pads the canvas with white to make it square,
    then scales to `size` x `size` and writes out to png_path.
    '''
    column_height = 200
    top = max(max(bins), max(overlay)) or 1.0
    canvas = _bars_to_pixel_array(bins, overlay, top, column_height)
    padded = _pad_pixel_array_to_square(canvas)

    zoom_factor = size / padded.shape[0]
    png_array = scipy.ndimage.zoom(padded, zoom_factor, order=0)

    with open(png_path, 'wb') as f:
        writer = png.Writer(len(png_array[0]), len(png_array), greyscale=True)
        writer.write(f, png_array)


def _bars_to_pixel_array(bins, overlay, top, column_height, bar_width=4):
    '''
    Renders bars as grey (128) on white (255), overlay markers as black (0).
    :return: uint8 ndarray with shape (column_height, bar_width * len(bins))
    '''
    arr = np.full((column_height, bar_width * len(bins)), 255, dtype=np.uint8)
    for digit, (height, expected) in enumerate(zip(bins, overlay)):
        left = digit * bar_width
        bar_rows = int(round(height / top * (column_height - 1)))
        if bar_rows > 0:
            arr[column_height - bar_rows:, left + 1:left + bar_width] = 128
        marker_row = column_height - 1 - int(round(expected / top * (column_height - 1)))
        arr[marker_row, left:left + bar_width] = 0
    return arr


def _pad_pixel_array_to_square(arr, pad_value=255):
    '''
    Pads the pixel array with value to make it square, keeping the bars at the bottom left.
    Default is 255 (white for PNG)
    :param arr: Input uint8 ndarray
    :return: Square array padded with `pad_value`
    '''
    (a, b) = arr.shape
    if a > b:
        padding = ((0, 0), (0, a - b))
    else:
        padding = ((b - a, 0), (0, 0))
    return np.pad(arr, padding, mode='constant', constant_values=pad_value)
