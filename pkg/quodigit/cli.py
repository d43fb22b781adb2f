import argparse
import logging
import math
import os
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

from .base_counter import BaseCounter
from .bruteforce_counter import BruteForceCounter
from .config import Settings, load_settings
from .constants import digit_constant, digit_constant_series
from .exact_arith import Params
from .experiments import (SCHEME_NAMES, boundary_growth_report, emit, envelope_report, error_sweep, make_histogram,
                          scheme_from_name)
from .floor_sum_counter import FloorSumCounter
from .primes import prime_pair_count, prime_sieve, theta_weighted_count
from .utils import ParameterRangeError, ResourceGuardError, format_count, format_real

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_IO = 1

COUNT_VARIANTS = ('pairs', 'coprime', 'prime-weighted', 'prime-count', 'boundary', 'half-weight')
SWEEP_SCHEMES = ('all', 'coprime', 'prime-weighted')


def parse_grid(text: str) -> List[int]:
    try:
        grid = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'grid must be comma separated integers, not "{text}"')
    if not grid:
        raise argparse.ArgumentTypeError('grid must not be empty')
    return grid


def parse_threads(text: str) -> int:
    if text == 'auto':
        return os.cpu_count() or 1
    try:
        threads = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'threads must be a positive integer or "auto", not "{text}"')
    if threads < 1:
        raise argparse.ArgumentTypeError(f'threads must be >= 1, not {threads}')
    return threads


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='quodigit', description='Exact digit statistics of quotients n/m over the lattice [1, T]^2.')
    parser.add_argument('--threads', type=parse_threads, help='worker threads, or "auto" (default: all cores)')
    parser.add_argument('--brute-force-cap', type=int, help='largest T for enumeration based counts')
    parser.add_argument('--sieve-guard', type=int, help='largest prime sieve limit')
    parser.add_argument('--mobius-guard', type=int, help='largest Mobius table for coprime counts')
    parser.add_argument('--config', help='key = value settings file (default: $QUODIGIT_CONFIG)')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging on stderr')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    constant = commands.add_parser('constant', help='limiting density c(b, r; i)')
    constant.add_argument('-b', '--base', type=int, required=True)
    constant.add_argument('-r', '--digit', type=int, help='a single digit (default: all digits and their sum)')
    constant.add_argument('-i', '--pos', type=int, default=1)
    constant.add_argument('--series', type=int, metavar='K', help='also show the series truncated at k = K')

    count = commands.add_parser('count', help='exact count for one digit')
    count.add_argument('variant', choices=COUNT_VARIANTS)
    count.add_argument('-b', '--base', type=int, required=True)
    count.add_argument('-r', '--digit', type=int, required=True)
    count.add_argument('-i', '--pos', type=int, default=1)
    count.add_argument('-T', '--bound', type=int, required=True)
    count.add_argument('--no-diagonal', action='store_true', help='drop pairs p = q from prime variants')
    count.add_argument('--divisor', type=int, help='boundary: only pairs with this gcd')
    count.add_argument('--brute-force', action='store_true', help='count by enumeration instead of floor sums')

    histogram = commands.add_parser('histogram', help='digit histogram with the limiting densities overlaid')
    histogram.add_argument('-b', '--base', type=int, required=True)
    histogram.add_argument('-i', '--pos', type=int, default=1)
    histogram.add_argument('-T', '--bound', type=int, required=True)
    histogram.add_argument('--scheme', choices=list(SCHEME_NAMES), default='all')
    histogram.add_argument('--no-diagonal', action='store_true', help='drop pairs p = q from prime schemes')
    _add_output_arguments(histogram, ('csv', 'json', 'svg', 'png'))

    sweep = commands.add_parser('sweep', help='residuals against the main term over a grid of T')
    sweep.add_argument('-b', '--base', type=int, required=True)
    sweep.add_argument('-r', '--digit', type=int, required=True)
    sweep.add_argument('-i', '--pos', type=int, default=1)
    sweep.add_argument('--grid', type=parse_grid, required=True, help='comma separated T values, ascending')
    sweep.add_argument('--scheme', choices=SWEEP_SCHEMES, default='all')
    _add_output_arguments(sweep, ('csv', 'json'))

    boundary = commands.add_parser('boundary-report', help='growth of the boundary counts (i = 1)')
    boundary.add_argument('-b', '--base', type=int, required=True)
    boundary.add_argument('-r', '--digit', type=int, required=True)
    boundary.add_argument('--grid', type=parse_grid, required=True)
    boundary.add_argument('--divisor', type=int, help='only pairs with this gcd')
    _add_output_arguments(boundary, ('csv', 'json'))

    envelope = commands.add_parser('envelope', help='sup |pi(x) - li(x)| over a grid of X')
    envelope.add_argument('--grid', type=parse_grid, required=True)
    _add_output_arguments(envelope, ('csv', 'json'))
    return parser


def _add_output_arguments(parser: argparse.ArgumentParser, formats) -> None:
    parser.add_argument('--format', choices=formats, help='output format (default from settings, else csv)')
    parser.add_argument('-o', '--output', help='output file (default: a generated name in $QUODIGIT_OUTPUT_DIR)')


def cmd_constant(args, settings: Settings) -> None:
    digits = [args.digit] if args.digit is not None else range(args.base)
    values = []
    for digit in digits:
        constant = digit_constant(args.base, digit, args.pos)
        values.append(constant.value)
        line = f'{digit} {format_real(constant.value)}'
        if args.series is not None:
            series = digit_constant_series(args.base, digit, args.pos, args.series)
            line += f' series={format_real(series.value)} tail<={format_real(series.tail_bound)}'
        print(line)
    if args.digit is None:
        print(f'sum {math.fsum(values):.12f}')


def _counter(args, settings: Settings) -> BaseCounter:
    if args.brute_force:
        return BruteForceCounter(cap=settings.brute_force_cap)
    return FloorSumCounter(mobius_guard=settings.mobius_guard)


def cmd_count(args, settings: Settings) -> None:
    params = Params(args.base, args.digit, args.pos, args.bound)
    variant = args.variant
    if args.no_diagonal and not variant.startswith('prime'):
        raise ParameterRangeError(f'--no-diagonal only applies to prime variants, not {variant}')
    if variant == 'pairs':
        value = _counter(args, settings).count_pairs(params).value
    elif variant == 'coprime':
        value = _counter(args, settings).count_coprime_pairs(params).value
    elif variant == 'boundary':
        value = _counter(args, settings).count_boundary(params, args.divisor)
    elif variant == 'prime-weighted':
        table = prime_sieve(max(args.bound, 2), settings.sieve_guard)
        value = theta_weighted_count(params, args.no_diagonal, table).value
    elif variant == 'prime-count':
        table = prime_sieve(max(args.bound, 2), settings.sieve_guard)
        value = prime_pair_count(params, args.no_diagonal, table).value
    else:
        half_units = BruteForceCounter(cap=settings.brute_force_cap).count_pairs_half_weight(
            args.base, args.pos, args.bound)
        value = Fraction(half_units[args.digit], 2)
    print(format_count(value))


def _output_path(args, settings: Settings, stem: str) -> Tuple[str, str]:
    fmt = args.format or settings.format
    if args.output:
        return args.output, fmt
    return settings.output_path(f'{stem}.{fmt}'), fmt


def cmd_histogram(args, settings: Settings) -> None:
    scheme = scheme_from_name(args.scheme, args.no_diagonal)
    histogram = make_histogram(args.bound, args.base, args.pos, scheme,
                               counter=FloorSumCounter(mobius_guard=settings.mobius_guard), threads=settings.threads,
                               brute_force_cap=settings.brute_force_cap, sieve_guard=settings.sieve_guard)
    suffix = '_nodiag' if args.no_diagonal else ''
    path, fmt = _output_path(args, settings, f'histogram_{args.scheme}{suffix}_b{args.base}_i{args.pos}_T{args.bound}')
    emit(histogram, fmt, path)
    print(path)


def cmd_sweep(args, settings: Settings) -> None:
    scheme = scheme_from_name(args.scheme)
    sweep = error_sweep(args.base, args.digit, args.pos, args.grid, scheme,
                        counter=FloorSumCounter(mobius_guard=settings.mobius_guard), threads=settings.threads,
                        sieve_guard=settings.sieve_guard)
    path, fmt = _output_path(args, settings, f'sweep_{args.scheme}_b{args.base}_r{args.digit}_i{args.pos}')
    emit(sweep, fmt, path)
    print(path)


def cmd_boundary_report(args, settings: Settings) -> None:
    report = boundary_growth_report(args.base, args.digit, args.grid, divisor=args.divisor)
    path, fmt = _output_path(args, settings, f'boundary_b{args.base}_r{args.digit}')
    emit(report, fmt, path)
    print(path)


def cmd_envelope(args, settings: Settings) -> None:
    report = envelope_report(args.grid, sieve_guard=settings.sieve_guard)
    path, fmt = _output_path(args, settings, 'envelope')
    emit(report, fmt, path)
    print(path)


COMMANDS = {
    'constant': cmd_constant,
    'count': cmd_count,
    'histogram': cmd_histogram,
    'sweep': cmd_sweep,
    'boundary-report': cmd_boundary_report,
    'envelope': cmd_envelope,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    try:
        settings = load_settings(args.config).override(
            threads=args.threads, brute_force_cap=args.brute_force_cap, sieve_guard=args.sieve_guard,
            mobius_guard=args.mobius_guard)
        logger.debug(f'running {args.command} with {settings}')
        COMMANDS[args.command](args, settings)
    except ResourceGuardError as e:
        print(f'quodigit: refused: {e}', file=sys.stderr)
        return EXIT_GUARD
    except ParameterRangeError as e:
        print(f'quodigit: error: {e}', file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f'quodigit: {e}', file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
