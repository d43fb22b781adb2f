from .base_counter import BaseCounter, CountResult, Weight, WeightScheme # noqa
from .floor_sum_counter import FloorSumCounter, count_triangle, mobius_sieve, slopes # noqa
from .bruteforce_counter import BruteForceCounter # noqa
from .exact_arith import Params, digit_of_quotient, floor_sum, is_digit_boundary, k_max # noqa
from .constants import digamma, digit_constant, digit_constant_series, coprime_constant # noqa
from .primes import (prime_sieve, prime_counting, theta_weighted_count, prime_pair_count, # noqa
                     prime_pair_half_weight, li, empirical_error_envelope)  # noqa
from .experiments import make_histogram, error_sweep, boundary_growth_report, envelope_report, emit # noqa
from .utils import ParameterRangeError, ResourceGuardError, UnsupportedVariantError # noqa
