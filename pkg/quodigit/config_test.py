import os

import pytest

from .bruteforce_counter import DEFAULT_BRUTE_FORCE_CAP
from .config import Settings, load_settings, parse_config_file
from .primes import DEFAULT_SIEVE_GUARD
from .utils import ParameterRangeError


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / 'quodigit.conf'
    path.write_text('# limits for the shared box\n'
                    '\n'
                    'threads = 3\n'
                    'sieve_guard = 1_000_000\n'
                    'output_dir = "/tmp/quodigit out"\n')
    return str(path)


def test_defaults():
    settings = load_settings(environ={})
    assert settings.threads >= 1
    assert settings.brute_force_cap == DEFAULT_BRUTE_FORCE_CAP
    assert settings.sieve_guard == DEFAULT_SIEVE_GUARD
    assert settings.output_dir == '.'
    assert settings.format == 'csv'


def test_parse_config_file(config_file):
    assert parse_config_file(config_file) == {'threads': 3, 'sieve_guard': 10 ** 6, 'output_dir': '/tmp/quodigit out'}


def test_config_file_rejects_unknown_keys(tmp_path):
    path = tmp_path / 'bad.conf'
    path.write_text('threads = 2\ncolour = blue\n')
    with pytest.raises(ParameterRangeError, match='unknown setting "colour"'):
        parse_config_file(str(path))


def test_config_file_rejects_malformed_lines(tmp_path):
    path = tmp_path / 'bad.conf'
    path.write_text('threads 2\n')
    with pytest.raises(ParameterRangeError, match=':1:'):
        parse_config_file(str(path))


def test_config_file_rejects_non_integers(tmp_path):
    path = tmp_path / 'bad.conf'
    path.write_text('threads = many\n')
    with pytest.raises(ParameterRangeError, match='must be an integer'):
        parse_config_file(str(path))


def test_environment_overrides_file(config_file):
    environ = {'QUODIGIT_THREADS': '5', 'QUODIGIT_MOBIUS_GUARD': '1000'}
    settings = load_settings(config_file, environ)
    assert settings.threads == 5
    assert settings.mobius_guard == 1000
    assert settings.sieve_guard == 10 ** 6


def test_config_path_from_environment(config_file):
    settings = load_settings(environ={'QUODIGIT_CONFIG': config_file})
    assert settings.threads == 3


def test_flags_override_everything(config_file):
    settings = load_settings(config_file, {'QUODIGIT_THREADS': '5'}).override(threads=7, sieve_guard=None)
    assert settings.threads == 7
    assert settings.sieve_guard == 10 ** 6


@pytest.mark.parametrize('values', [{'threads': 0}, {'brute_force_cap': -1}, {'format': 'pdf'}])
def test_settings_validation(values):
    with pytest.raises(ParameterRangeError):
        Settings(**values)


def test_output_path():
    settings = Settings(output_dir='results')
    assert settings.output_path('sweep.csv') == os.path.join('results', 'sweep.csv')
    assert settings.output_path('elsewhere/sweep.csv') == 'elsewhere/sweep.csv'
    assert settings.output_path('/abs/sweep.csv') == '/abs/sweep.csv'


def test_threads_auto_uses_every_core(tmp_path):
    path = tmp_path / 'auto.conf'
    path.write_text('threads = auto\n')
    expected = os.cpu_count() or 1
    assert load_settings(str(path), environ={}).threads == expected
    assert load_settings(environ={'QUODIGIT_THREADS': 'auto'}).threads == expected


def test_config_file_rejects_invalid_utf8(tmp_path):
    path = tmp_path / 'latin1.conf'
    path.write_bytes(b'threads = \xff\xfe\n')
    with pytest.raises(ParameterRangeError, match='latin1.conf is not valid UTF-8'):
        parse_config_file(str(path))
