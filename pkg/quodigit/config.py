"""
Default settings for the command line. Each value comes from, in increasing priority:
the built-in default, an optional `key = value` file, the QUODIGIT_* environment variables
and finally explicit command line flags (applied by the caller with `Settings.override`).
"""
import logging
import os
from dataclasses import dataclass, fields, replace
from typing import Mapping, Optional

from .bruteforce_counter import DEFAULT_BRUTE_FORCE_CAP
from .floor_sum_counter import DEFAULT_MOBIUS_GUARD
from .primes import DEFAULT_SIEVE_GUARD
from .utils import ParameterRangeError

logger = logging.getLogger(__name__)

CONFIG_ENV = 'QUODIGIT_CONFIG'

ENVIRONMENT_KEYS = {
    'QUODIGIT_OUTPUT_DIR': 'output_dir',
    'QUODIGIT_THREADS': 'threads',
    'QUODIGIT_BRUTE_FORCE_CAP': 'brute_force_cap',
    'QUODIGIT_SIEVE_GUARD': 'sieve_guard',
    'QUODIGIT_MOBIUS_GUARD': 'mobius_guard',
}


@dataclass(frozen=True)
class Settings:
    threads: int = os.cpu_count() or 1
    brute_force_cap: int = DEFAULT_BRUTE_FORCE_CAP
    sieve_guard: int = DEFAULT_SIEVE_GUARD
    mobius_guard: int = DEFAULT_MOBIUS_GUARD
    output_dir: str = '.'
    format: str = 'csv'

    def __post_init__(self):
        for name in ('threads', 'brute_force_cap', 'sieve_guard', 'mobius_guard'):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ParameterRangeError(f'{name} must be a positive integer, not {value}')
        if self.format not in ('csv', 'json', 'svg', 'png'):
            raise ParameterRangeError(f'format must be csv, json, svg or png, not "{self.format}"')

    def override(self, **values) -> 'Settings':
        '''
        Returns a copy with every value that is not None replaced.
        '''
        return replace(self, **{key: value for key, value in values.items() if value is not None})

    def output_path(self, filename: str) -> str:
        if os.path.isabs(filename) or os.path.dirname(filename):
            return filename
        return os.path.join(self.output_dir, filename)


def _convert(key: str, raw: str, source: str):
    types = {f.name: f.type for f in fields(Settings)}
    if key not in types:
        raise ParameterRangeError(f'unknown setting "{key}" in {source}')
    if key == 'threads' and raw.strip().lower() == 'auto':
        return os.cpu_count() or 1
    if types[key] in (int, 'int'):
        try:
            return int(raw.replace('_', ''))
        except ValueError:
            raise ParameterRangeError(f'setting "{key}" in {source} must be an integer, not "{raw}"')
    return raw


def parse_config_file(path: str) -> dict:
    '''
    Reads `key = value` lines; blank lines and lines starting with # are skipped,
    values may be quoted.
    '''
    values = {}
    try:
        with open(path, encoding='utf-8') as f:
            lines = f.readlines()
    except UnicodeDecodeError as e:
        raise ParameterRangeError(f'{path} is not valid UTF-8: {e}') from e
    for line_number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        if '=' not in line:
            raise ParameterRangeError(f'{path}:{line_number}: expected "key = value", got "{line}"')
        key, raw = (part.strip() for part in line.split('=', 1))
        values[key] = _convert(key, raw.strip('"\''), f'{path}:{line_number}')
    return values


def load_settings(config_path: Optional[str] = None, environ: Optional[Mapping[str, str]] = None) -> Settings:
    environ = os.environ if environ is None else environ
    values = {}
    config_path = config_path or environ.get(CONFIG_ENV)
    if config_path:
        logger.debug(f'reading settings from {config_path}')
        values.update(parse_config_file(config_path))
    for variable, key in ENVIRONMENT_KEYS.items():
        if variable in environ:
            values[key] = _convert(key, environ[variable], f'environment variable {variable}')
    return Settings(**values)
