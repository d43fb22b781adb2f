"""
Numerical experiments: digit histograms with their limiting densities overlaid, error sweeps
against the c T^2 main term, boundary growth and prime error envelope reports, and writing
any of them out as csv, json, svg or png.
"""
import csv
import io
import json
import logging
import math
import os
import xml.etree.ElementTree as ET
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Union

from .base_counter import ALL_PAIRS, BaseCounter, Weight, WeightScheme
from .bruteforce_counter import DEFAULT_BRUTE_FORCE_CAP, BruteForceCounter
from .constants import ZETA_2, digit_constant
from .exact_arith import Params
from .floor_sum_counter import FloorSumCounter
from .primes import (DEFAULT_SIEVE_GUARD, ErrorEnvelope, PrimeTable, empirical_error_envelope, prime_pair_count,
                     prime_pair_half_weight, prime_sieve, theta_weighted_count)
from .utils import (JSON_SAFE_INTEGER, Number, ParameterRangeError, ResourceGuardError, format_count,
                    half_units_to_fractions, process_and_write_png, require)

logger = logging.getLogger(__name__)

SCHEME_NAMES = {
    'all': (Weight.ALL_PAIRS, Weight.ALL_PAIRS),
    'coprime': (Weight.COPRIME, Weight.ALL_PAIRS),
    'prime': (Weight.PRIME_PAIRS, Weight.ALL_PAIRS),
    'prime-weighted': (Weight.PRIME_LOG_WEIGHTS, Weight.ALL_PAIRS),
    'half': (Weight.HALF_BOUNDARY, Weight.ALL_PAIRS),
    'coprime-half': (Weight.HALF_BOUNDARY, Weight.COPRIME),
    'prime-half': (Weight.HALF_BOUNDARY, Weight.PRIME_PAIRS),
}
"""
Command line names of the histogram weight schemes.
"""


class OutputFormat(Enum):
    CSV = 'csv'
    JSON = 'json'
    SVG = 'svg'
    PNG = 'png'


def scheme_from_name(name: str, exclude_diagonal: bool = False) -> WeightScheme:
    if name not in SCHEME_NAMES:
        raise ParameterRangeError(f'scheme must be one of {", ".join(SCHEME_NAMES)}, not "{name}"')
    tag, support = SCHEME_NAMES[name]
    return WeightScheme(tag, exclude_diagonal, support)


def _json_number(value: Number) -> Union[int, float, None]:
    if value is None:
        return None
    if isinstance(value, Fraction):
        value = value.numerator if value.denominator == 1 else float(value)
    if isinstance(value, int) and abs(value) > JSON_SAFE_INTEGER:
        raise ResourceGuardError(f'count {value} is above 2^53 and cannot be written to JSON exactly')
    return value


def _csv_cell(value: Optional[Number]) -> str:
    return '' if value is None else format_count(value)


class Report:
    '''
    Tabular result: a header, rows of numbers and the parameters they were computed for.
    '''
    columns: Sequence[str] = ()
    rows_key = 'rows'

    def params_dict(self) -> Dict[str, object]:
        raise NotImplementedError()

    def scheme_name(self) -> Optional[str]:
        return None

    def table(self) -> List[List[Optional[Number]]]:
        raise NotImplementedError()

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.columns)
        for row in self.table():
            writer.writerow([_csv_cell(cell) for cell in row])
        return buffer.getvalue()

    def to_json(self) -> str:
        rows = [{column: _json_number(cell) for column, cell in zip(self.columns, row)} for row in self.table()]
        document = {'params': self.params_dict(), 'scheme': self.scheme_name(), self.rows_key: rows}
        return json.dumps(document, indent=2) + '\n'


@dataclass
class Histogram(Report):
    bound: int
    base: int
    position: int
    scheme: WeightScheme
    bins: List[Number]
    normalized: List[float]
    overlay: List[float]

    columns = ('digit', 'count', 'normalized', 'constant')
    rows_key = 'bins'

    @property
    def total(self) -> Number:
        return sum(self.bins)

    def params_dict(self):
        return {'T': self.bound, 'b': self.base, 'i': self.position,
                'exclude_diagonal': self.scheme.exclude_diagonal}

    def scheme_name(self):
        return self.scheme.name

    def table(self):
        return [[digit, count, normalized, constant]
                for digit, (count, normalized, constant) in enumerate(zip(self.bins, self.normalized, self.overlay))]

    def to_svg(self, width: int = 640, height: int = 400, margin: int = 20) -> str:
        '''
        Bars for the normalized counts, a polyline with dots for the limiting densities.
        '''
        top = max(max(self.normalized), max(self.overlay)) or 1.0
        slot = (width - 2 * margin) / self.base
        scale = (height - 2 * margin) / top

        svg = ET.Element('svg', {'xmlns': 'http://www.w3.org/2000/svg', 'version': '1.1',
                                 'width': str(width), 'height': str(height)})
        ET.SubElement(svg, 'title').text = f'digit histogram T={self.bound} b={self.base} i={self.position} ' \
                                           f'{self.scheme.name}'
        ET.SubElement(svg, 'rect', {'x': '0', 'y': '0', 'width': str(width), 'height': str(height), 'fill': 'white'})
        points = []
        for digit, (value, expected) in enumerate(zip(self.normalized, self.overlay)):
            left = margin + digit * slot
            bar_height = value * scale
            ET.SubElement(svg, 'rect', {'x': f'{left + 0.1 * slot:.2f}', 'y': f'{height - margin - bar_height:.2f}',
                                        'width': f'{0.8 * slot:.2f}', 'height': f'{bar_height:.2f}',
                                        'fill': 'grey'})
            x, y = left + 0.5 * slot, height - margin - expected * scale
            points.append(f'{x:.2f},{y:.2f}')
            ET.SubElement(svg, 'circle', {'cx': f'{x:.2f}', 'cy': f'{y:.2f}', 'r': '2', 'fill': 'black'})
        ET.SubElement(svg, 'polyline', {'points': ' '.join(points), 'fill': 'none', 'stroke': 'black'})
        return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding='unicode') + '\n'


@dataclass
class SweepRow:
    T: int
    phi: Number
    c_T2: float
    residual: float
    scaled_residual: Optional[float]


@dataclass
class Sweep(Report):
    base: int
    digit: int
    position: int
    scheme: WeightScheme
    rows: List[SweepRow] = field(default_factory=list)

    columns = ('T', 'phi', 'c_T2', 'residual', 'scaled_residual')

    def __iter__(self) -> Iterator[SweepRow]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, index) -> SweepRow:
        return self.rows[index]

    @property
    def max_scaled_residual(self) -> Optional[float]:
        scaled = [abs(row.scaled_residual) for row in self.rows if row.scaled_residual is not None]
        return max(scaled) if scaled else None

    def params_dict(self):
        return {'b': self.base, 'r': self.digit, 'i': self.position}

    def scheme_name(self):
        return self.scheme.name

    def table(self):
        return [[row.T, row.phi, row.c_T2, row.residual, row.scaled_residual] for row in self.rows]


@dataclass
class BoundaryRow:
    T: int
    boundary_count: int
    ratio: Optional[float]


@dataclass
class BoundaryReport(Report):
    base: int
    digit: int
    rows: List[BoundaryRow] = field(default_factory=list)

    columns = ('T', 'boundary_count', 'ratio')

    def __iter__(self) -> Iterator[BoundaryRow]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def params_dict(self):
        return {'b': self.base, 'r': self.digit, 'i': 1}

    def table(self):
        return [[row.T, row.boundary_count, row.ratio] for row in self.rows]


@dataclass
class EnvelopeReport(Report):
    rows: List[ErrorEnvelope] = field(default_factory=list)

    columns = ('X', 'envelope', 'argmax_x', 'rh_scale', 'ratio')

    def __iter__(self) -> Iterator[ErrorEnvelope]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def params_dict(self):
        return {'X': [row.X for row in self.rows]}

    def table(self):
        return [[row.X, row.value, row.argmax_x, row.rh_scale, row.ratio] for row in self.rows]


def _map_in_order(function, items, threads: int) -> list:
    '''
    Applies `function` to every item on a pool of `threads` workers; results keep the input order.
    '''
    require(threads >= 1, f'threads must be >= 1, not {threads}')
    if threads == 1:
        return [function(item) for item in items]
    cores = os.cpu_count() or 1
    if threads > cores:
        logger.warning(f'{threads} threads requested but only {cores} cores are available')
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(function, items))


def _normalize(bins: Sequence[Number]) -> List[float]:
    if all(isinstance(value, (int, Fraction)) for value in bins):
        total = sum(bins)
        return [float(Fraction(value) / total) if total else 0.0 for value in bins]
    total = math.fsum(bins)
    return [value / total if total else 0.0 for value in bins]


def make_histogram(bound: int, base: int, position: int, scheme: WeightScheme = ALL_PAIRS,
                   counter: Optional[BaseCounter] = None, threads: int = 1,
                   brute_force_cap: int = DEFAULT_BRUTE_FORCE_CAP, sieve_guard: int = DEFAULT_SIEVE_GUARD,
                   table: Optional[PrimeTable] = None) -> Histogram:
    '''
    :param counter: counter used for the all-pairs and coprime schemes, FloorSumCounter by default
    :param threads: digits are counted concurrently on this many threads
    :return: Histogram with one bin per digit and c(b, r; i) as overlay; the coprime overlay
        is the same, c/zeta(2) renormalized
    '''
    Params(base, 0, position, bound)  # range checks only
    counter = counter or FloorSumCounter()
    tag = scheme.tag
    logger.debug(f'histogram T={bound} b={base} i={position} {scheme.name} on {threads} threads')

    if tag is Weight.HALF_BOUNDARY:
        if scheme.support is Weight.PRIME_PAIRS:
            table = table or prime_sieve(max(bound, 2), sieve_guard)
            half_units = prime_pair_half_weight(base, position, bound, scheme.exclude_diagonal, table,
                                                cap=brute_force_cap, guard=sieve_guard)
        else:
            half_units = BruteForceCounter(cap=brute_force_cap).count_pairs_half_weight(
                base, position, bound, coprime=scheme.support is Weight.COPRIME)
        bins = half_units_to_fractions(half_units)
    else:
        if scheme.over_primes:
            table = table or prime_sieve(max(bound, 2), sieve_guard)

        def count_digit(digit):
            params = Params(base, digit, position, bound)
            if tag is Weight.ALL_PAIRS:
                return counter.count_pairs(params).value
            if tag is Weight.COPRIME:
                return counter.count_coprime_pairs(params).value
            if tag is Weight.PRIME_PAIRS:
                return prime_pair_count(params, scheme.exclude_diagonal, table).value
            return theta_weighted_count(params, scheme.exclude_diagonal, table).value

        bins = _map_in_order(count_digit, range(base), threads)

    overlay = [digit_constant(base, digit, position).value for digit in range(base)]
    return Histogram(bound, base, position, scheme, bins, _normalize(bins), overlay)


def error_sweep(base: int, digit: int, position: int, grid: Sequence[int], scheme: WeightScheme = ALL_PAIRS,
                counter: Optional[BaseCounter] = None, threads: int = 1,
                sieve_guard: int = DEFAULT_SIEVE_GUARD) -> Sweep:
    '''
    One row per T of the exact count against its main term.

    all_pairs: main term c T^2, residual scaled by T log T
    coprime: main term (c/zeta(2)) T^2, scaled by T log^2 T
    prime_log_weights: main term c T^2, scaled by T E(T) log T with E the prime error envelope

    The scaled residual is None where the scale vanishes (T = 1).
    '''
    require(len(grid) >= 1, 'grid must contain at least one T')
    require(all(a < b for a, b in zip(grid, grid[1:])), f'grid must be strictly ascending, not {list(grid)}')
    require(scheme.tag in (Weight.ALL_PAIRS, Weight.COPRIME, Weight.PRIME_LOG_WEIGHTS),
            f'sweeps support all_pairs, coprime and prime_log_weights, not {scheme.name}')
    for bound in grid:
        Params(base, digit, position, bound)
    counter = counter or FloorSumCounter()
    constant = digit_constant(base, digit, position).value
    table = prime_sieve(max(grid[-1], 2), sieve_guard) if scheme.tag is Weight.PRIME_LOG_WEIGHTS else None

    def sweep_row(bound):
        params = Params(base, digit, position, bound)
        log_bound = math.log(bound)
        if scheme.tag is Weight.COPRIME:
            phi = counter.count_coprime_pairs(params).value
            main = constant / ZETA_2 * bound * bound
            scale = bound * log_bound ** 2
        elif scheme.tag is Weight.PRIME_LOG_WEIGHTS:
            phi = theta_weighted_count(params, scheme.exclude_diagonal, table).value
            main = constant * bound * bound
            envelope = empirical_error_envelope(bound, table).value if bound >= 2 else 0.0
            scale = bound * envelope * log_bound
        else:
            phi = counter.count_pairs(params).value
            main = constant * bound * bound
            scale = bound * log_bound
        residual = phi - main
        return SweepRow(bound, phi, main, residual, residual / scale if scale > 0 else None)

    sweep = Sweep(base, digit, position, scheme, _map_in_order(sweep_row, list(grid), threads))
    logger.debug(f'sweep b={base} r={digit} i={position}: max scaled residual {sweep.max_scaled_residual}')
    return sweep


def boundary_growth_report(base: int, digit: int, grid: Sequence[int],
                           counter: Optional[BaseCounter] = None, divisor: Optional[int] = None) -> BoundaryReport:
    '''
    Boundary counts against their expected growth ((b, r)/b) T log T; the ratio column should
    settle towards a constant. With `divisor`, only pairs with that gcd are counted.
    '''
    require(len(grid) >= 1, 'grid must contain at least one T')
    counter = counter or FloorSumCounter()
    growth = math.gcd(base, digit) / base
    rows = []
    for bound in grid:
        count = counter.count_boundary(Params(base, digit, 1, bound), divisor)
        expected = growth * bound * math.log(bound)
        rows.append(BoundaryRow(bound, count, count / expected if expected > 0 else None))
    return BoundaryReport(base, digit, rows)


def envelope_report(grid: Sequence[int], sieve_guard: int = DEFAULT_SIEVE_GUARD) -> EnvelopeReport:
    require(len(grid) >= 1, 'grid must contain at least one X')
    table = prime_sieve(max(max(grid), 2), sieve_guard)
    return EnvelopeReport([empirical_error_envelope(X, table) for X in grid])


def emit(result: Report, fmt: Union[OutputFormat, str], path: str) -> None:
    '''
    Writes `result` to `path`. csv and json work for every report, svg and png for histograms only.
    Output is byte-for-byte deterministic for identical results.
    '''
    try:
        fmt = OutputFormat(fmt)
    except ValueError:
        formats = ', '.join(f.value for f in OutputFormat)
        raise ParameterRangeError(f'format must be one of {formats}, not "{fmt}"')
    if fmt in (OutputFormat.SVG, OutputFormat.PNG) and not isinstance(result, Histogram):
        raise ParameterRangeError(f'{fmt.value} output is only available for histograms')
    try:
        if fmt is OutputFormat.PNG:
            process_and_write_png(result.normalized, result.overlay, path)
        else:
            if fmt is OutputFormat.CSV:
                text = result.to_csv()
            elif fmt is OutputFormat.JSON:
                text = result.to_json()
            else:
                text = result.to_svg()
            with open(path, 'w', encoding='utf-8', newline='\n') as f:
                f.write(text)
    except OSError as e:
        raise OSError(e.errno, f'could not write {fmt.value} output: {e.strerror}', str(path)) from e
    logger.info(f'wrote {fmt.value} to {path}')

