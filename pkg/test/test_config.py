# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#

import logging
from fractions import Fraction
from io import StringIO

import mock
import pytest

from multiram.config import (CONFIG_ENV_VAR, DEFAULT_LOG_FORMAT, Config,
                             parse_boolean, parse_colouring_format,
                             parse_fraction, parse_positive_int,
                             parse_remainder)
from multiram.procedures import TilingParams

TEST_CONFIG = """
[multiram]
log_file = /tmp/multiram.log
log_level = DEBUG
threads = 3
colouring_format = JSON
check_constructions = off

[solver]
cap = 9
symmetric_cap = 11

[tiling]
matchings = 4
x_degree_ratio = 0.5
min_degree_ratio = "3/4"
remainder = worst
"""


def _config(text):
    return Config(StringIO(text))


class TestParsers(object):

    @pytest.mark.parametrize('value, expected', [
        ('true', True), ('On', True), ('1', True),
        ('false', False), ('NO', False), ('0', False),
    ])
    def test_parse_boolean(self, value, expected):
        assert parse_boolean(value) is expected

    def test_parse_boolean_invalid(self):
        with pytest.raises(ValueError):
            parse_boolean('maybe')

    @pytest.mark.parametrize('value, expected', [
        ('auto', None), (' Worst ', 'worst'), ('2', 2),
    ])
    def test_parse_remainder(self, value, expected):
        assert parse_remainder(value) == expected

    @pytest.mark.parametrize('value', ['0', 'most', '-3'])
    def test_parse_remainder_invalid(self, value):
        with pytest.raises(ValueError):
            parse_remainder(value)

    def test_parse_fraction(self):
        assert parse_fraction('7/8') == Fraction(7, 8)
        assert parse_fraction(' 0.25 ') == Fraction(1, 4)
        for value in ('3/2', '-1', '1/0', 'half'):
            with pytest.raises(ValueError):
                parse_fraction(value)

    def test_parse_positive_int(self):
        assert parse_positive_int('12') == 12
        with pytest.raises(ValueError):
            parse_positive_int('0')

    def test_parse_colouring_format(self):
        assert parse_colouring_format('Text') == 'text'
        assert parse_colouring_format(None) is None
        with pytest.raises(ValueError):
            parse_colouring_format('csv')


class TestConfig(object):

    def test_defaults(self):
        config = _config('')
        assert config.log_file is None
        assert config.log_level == logging.INFO
        assert config.log_format == DEFAULT_LOG_FORMAT
        assert config.threads == 1
        assert config.colouring_format == 'text'
        assert config.check_constructions is True
        assert config.solver.cap == 10
        assert config.solver.symmetric_cap == 10
        assert config.tiling.min_degree_ratio == Fraction(7, 8)
        assert config.tiling.x_degree_ratio == Fraction(3, 4)
        assert config.tiling.ell_divisor == 256
        assert config.tiling.remainder is None

    def test_values(self):
        config = _config(TEST_CONFIG)
        assert config.log_file == '/tmp/multiram.log'
        assert config.log_level == 'DEBUG'
        assert config.threads == 3
        assert config.colouring_format == 'json'
        assert config.check_constructions is False
        assert config.solver.cap == 9
        assert config.solver.symmetric_cap == 11
        assert config.tiling.matchings == 4
        assert config.tiling.x_degree_ratio == Fraction(1, 2)
        assert config.tiling.min_degree_ratio == Fraction(3, 4)
        assert config.tiling.remainder == 'worst'

    def test_section_json(self):
        data = _config(TEST_CONFIG).solver.to_json()
        assert data == {'cap': 9, 'symmetric_cap': 11}

    def test_tiling_params_from_config(self):
        tiling = _config(TEST_CONFIG).tiling
        params = TilingParams.from_config(tiling, 400, 3, threads=2)
        assert params.ell == 10
        assert params.matchings == 4
        assert params.threads == 2
        assert params.x_degree_ratio == Fraction(1, 2)
        literal = TilingParams.from_config(tiling, 400, 3, literal=True)
        assert literal.ell == 0
        assert literal.matchings == 4

    def test_none_value(self):
        config = _config('[multiram]\nlog_file = None\n')
        assert config.log_file is None

    @mock.patch('multiram.config.output')
    def test_invalid_values(self, out_mock):
        config = _config('[multiram]\nthreads = many\ncheck_constructions = maybe\n'
                         '[solver]\ncap = -2\n')
        assert config.threads == 1
        assert config.solver.cap == 10
        assert config.check_constructions is True
        assert out_mock.warning.call_count == 3

    @mock.patch('multiram.config.output')
    def test_unknown_keys(self, out_mock):
        config = _config('[multiram]\nspeed = fast\n[tiling]\ncolour = red\n')
        out_mock.warning.assert_called_once_with(
            'Invalid configuration option "%s" in [%s] section.', 'speed', 'multiram')
        out_mock.reset_mock()
        assert config.tiling.matchings == 2
        out_mock.warning.assert_called_once_with(
            'Invalid configuration option "%s" in [%s] section.', 'colour', 'tiling')

    def test_missing_file(self, tmpdir):
        with pytest.raises(SystemExit):
            Config(str(tmpdir.join('absent.conf')))

    def test_environment(self, tmpdir, monkeypatch):
        config_file = tmpdir.join('env.conf')
        config_file.write('[solver]\ncap = 7\n')
        monkeypatch.setenv(CONFIG_ENV_VAR, str(config_file))
        config = Config()
        assert config.config_file == str(config_file)
        assert config.solver.cap == 7

    def test_no_default_file(self, monkeypatch):
        monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
        with mock.patch.object(Config, 'CONFIG_FILES', ['/nonexistent/multiram.conf']):
            config = Config()
        assert config.config_file is None
        assert config.solver.cap == 10
