# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""
This module is responsible for all the things related to Multiram
configuration, such as parsing the configuration file.
"""

import fractions
import logging
import os
import re
import sys
from configparser import ConfigParser, NoOptionError

from multiram import output

_logger = logging.getLogger(__name__)

DEFAULT_LOG_LEVEL = logging.INFO
DEFAULT_LOG_FORMAT = "%(asctime)s [%(process)s] %(name)s %(levelname)s: %(message)s"

#: Environment variable naming an explicit configuration file
CONFIG_ENV_VAR = 'MULTIRAM_CONFIG_FILE'

_TRUE_RE = re.compile(r"""^(true|t|yes|1|on)$""", re.IGNORECASE)
_FALSE_RE = re.compile(r"""^(false|f|no|0|off)$""", re.IGNORECASE)

# Possible colouring file formats (must be all lowercase)
COLOURING_FORMAT_VALUES = ['text', 'json']


def parse_boolean(value):
    """
    Parse an on/off switch such as ``true``, ``no`` or ``1``

    :raises ValueError: if the string is not a boolean
    """
    if _TRUE_RE.match(value):
        return True
    if _FALSE_RE.match(value):
        return False
    raise ValueError("Invalid boolean representation (use 'true' or 'false')")


def parse_fraction(value):
    """
    Parse a ratio written as "p/q" or as a decimal number.

    The result must lie in the closed interval [0, 1].

    :param str value: ratio representation
    :rtype: fractions.Fraction
    :raises ValueError: if the value is not a ratio in [0, 1]
    """
    try:
        ratio = fractions.Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError("Invalid ratio '{}' (use 'p/q' or a decimal)".format(value))
    if ratio < 0 or ratio > 1:
        raise ValueError("Ratio '{}' is outside [0, 1]".format(value))
    return ratio


def parse_positive_int(value):
    """
    Parse a strictly positive integer

    :param str value: integer representation
    :raises ValueError: if the value is not a positive integer
    """
    int_value = int(value)
    if int_value < 1:
        raise ValueError("Invalid value (must be a positive integer)")
    return int_value


def parse_remainder(value):
    """
    Parse the remainder the absorber is provisioned for: "auto" (None),
    "worst" or a positive integer

    :raises ValueError: on anything else
    """
    value = value.strip().lower()
    if value == 'auto':
        return None
    if value == 'worst':
        return value
    try:
        return parse_positive_int(value)
    except ValueError:
        raise ValueError("Invalid remainder '{}' (use 'auto', 'worst' or a "
                         "positive integer)".format(value))


def parse_colouring_format(value):
    """
    Parse a string to a valid colouring_format value.

    Valid values are contained in COLOURING_FORMAT_VALUES list

    :param str value: colouring_format value
    :raises ValueError: if the value is invalid
    """
    if value is None:
        return None
    if value.lower() in COLOURING_FORMAT_VALUES:
        return value.lower()
    raise ValueError("Invalid value (must be one in: '{}')".format(
        "', '".join(COLOURING_FORMAT_VALUES)))


class SectionConfig(object):
    """
    Typed view of one section of the configuration file.

    Subclasses list the accepted ``KEYS``, the ``DEFAULTS`` used for missing
    or invalid values and the ``PARSERS`` that turn raw strings into values.
    Every key becomes an attribute.
    """

    SECTION = None
    KEYS = []
    DEFAULTS = {}
    PARSERS = {}

    def invoke_parser(self, key, source, value, new_value):
        """
        Parse ``new_value`` for ``key``, keeping ``value`` when it is missing
        or when the parser rejects it (with a warning naming ``source``)
        """
        if new_value is None:
            return value
        parser = self.PARSERS.get(key)
        if parser is None:
            return new_value
        try:
            return parser(new_value)
        except Exception as e:
            output.warning("Ignoring invalid configuration value '%s' for key %s "
                           "in %s: %s", new_value, key, source, e)
            return value

    def __init__(self, config):
        self.config = config
        config.validate_section_config(self.SECTION, self.KEYS)
        source = '[%s] section' % self.SECTION
        for key in self.KEYS:
            value = self.invoke_parser(key, source, None,
                                       config.get(self.SECTION, key))
            if value is None and key in self.DEFAULTS:
                value = self.invoke_parser(key, 'DEFAULTS', None,
                                           self.DEFAULTS[key])
            setattr(self, key, value)

    def to_json(self):
        return dict((key, getattr(self, key)) for key in self.KEYS)


class SolverConfig(SectionConfig):
    """
    Settings of the exact arrowing engine
    """

    SECTION = 'solver'

    KEYS = [
        'cap',
        'symmetric_cap',
    ]

    DEFAULTS = {
        'cap': '10',
        'symmetric_cap': '10',
    }

    PARSERS = {
        'cap': parse_positive_int,
        'symmetric_cap': parse_positive_int,
    }


class TilingConfig(SectionConfig):
    """
    Settings of the absorption tiling pipeline
    """

    SECTION = 'tiling'

    KEYS = [
        'ell_divisor',
        'gadget_retry_cap',
        'matchings',
        'min_degree_ratio',
        'resilience_cap',
        'robust_retry_cap',
        'remainder',
        'x_degree_ratio',
    ]

    DEFAULTS = {
        'ell_divisor': '256',
        'gadget_retry_cap': '10000',
        'matchings': '2',
        'min_degree_ratio': '7/8',
        'resilience_cap': '1000',
        'robust_retry_cap': '1000',
        'remainder': 'auto',
        'x_degree_ratio': '3/4',
    }

    PARSERS = {
        'ell_divisor': parse_positive_int,
        'gadget_retry_cap': parse_positive_int,
        'matchings': parse_positive_int,
        'min_degree_ratio': parse_fraction,
        'resilience_cap': parse_positive_int,
        'robust_retry_cap': parse_positive_int,
        'remainder': parse_remainder,
        'x_degree_ratio': parse_fraction,
    }


class Config(object):
    """This class represents the multiram configuration.

    Default configuration files are ~/.multiram.conf and
    /etc/multiram/multiram.conf. When none of them exists the built-in
    defaults apply.
    """
    CONFIG_FILES = [
        '~/.multiram.conf',
        '/etc/multiram/multiram.conf',
    ]

    GLOBAL_KEYS = [
        'check_constructions',
        'colouring_format',
        'log_file',
        'log_format',
        'log_level',
        'threads',
    ]

    _QUOTE_RE = re.compile(r"""^(["'])(.*)\1$""")

    def __init__(self, filename=None):
        """
        :param filename: path or open file; when empty the
            ``MULTIRAM_CONFIG_FILE`` variable and then the default locations
            are tried
        """
        self._config = ConfigParser(strict=False)
        filename = filename or os.environ.get(CONFIG_ENV_VAR) or None
        if hasattr(filename, 'read'):
            self._config.read_file(filename)
        elif filename:
            path = os.path.expanduser(filename)
            if not os.path.exists(path):
                sys.exit("Configuration file '{}' does not exist".format(filename))
            self._config.read(path)
        else:
            filename = self._read_default_file()
        self.config_file = filename
        self._sections = {}
        self._parse_global_config()

    def _read_default_file(self):
        for path in self.CONFIG_FILES:
            full_path = os.path.expanduser(path)
            if os.path.exists(full_path) and full_path in self._config.read(full_path):
                return full_path
        _logger.debug("No configuration file found, using built-in defaults")
        return None

    def get(self, section, option, defaults=None, none_value=None):
        """
        Raw value of an option with surrounding quotes removed; the string
        ``None`` maps to ``none_value``
        """
        if not self._config.has_section(section):
            return None
        try:
            value = self._config.get(section, option, raw=False, vars=defaults)
        except NoOptionError:
            return None
        if value.lower() == 'none':
            return none_value
        return self._QUOTE_RE.sub(lambda m: m.group(2), value)

    def _parse_global(self, key, parser, default):
        raw = self.get('multiram', key)
        if raw is None:
            return default
        try:
            return parser(raw)
        except ValueError as e:
            output.warning("Ignoring invalid configuration value '%s' "
                           "for key %s in [multiram] section: %s", raw, key, e)
            return default

    def _parse_global_config(self):
        self.log_file = self.get('multiram', 'log_file')
        self.log_format = self.get('multiram', 'log_format') or DEFAULT_LOG_FORMAT
        self.log_level = self.get('multiram', 'log_level') or DEFAULT_LOG_LEVEL
        self.threads = self._parse_global('threads', parse_positive_int, 1)
        self.colouring_format = self._parse_global(
            'colouring_format', parse_colouring_format, 'text')
        self.check_constructions = self._parse_global(
            'check_constructions', parse_boolean, True)
        if self._config.has_section('multiram'):
            self._validate_with_keys(self._config.items('multiram'),
                                     self.GLOBAL_KEYS, 'multiram')

    def _section(self, cls):
        if cls.SECTION not in self._sections:
            self._sections[cls.SECTION] = cls(self)
        return self._sections[cls.SECTION]

    @property
    def solver(self):
        """The parsed [solver] section"""
        return self._section(SolverConfig)

    @property
    def tiling(self):
        """The parsed [tiling] section"""
        return self._section(TilingConfig)

    def validate_section_config(self, section, keys):
        """
        Warn about every option of ``section`` that is not in ``keys``
        """
        if self._config.has_section(section):
            self._validate_with_keys(self._config.items(section), keys, section)

    @staticmethod
    def _validate_with_keys(config_items, allowed_keys, section):
        for name, _value in config_items:
            if name not in allowed_keys:
                output.warning('Invalid configuration option "%s" in [%s] section.',
                               name, section)


def _main():
    """Print the settings in effect, for ``python -m multiram.config``"""
    config = Config()
    print("Configuration file: %s" % (config.config_file or '(built-in defaults)'))
    print("[multiram]")
    for key in Config.GLOBAL_KEYS:
        print("\t%s = %s" % (key, getattr(config, key)))
    for section in (config.solver, config.tiling):
        print("[%s]" % section.SECTION)
        for key, value in sorted(section.to_json().items()):
            print("\t%s = %s" % (key, value))


if __name__ == "__main__":
    _main()
