# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""
Helpers shared by the Multiram modules: vertex sets as int bitmasks,
seeded random generators, canonical JSON, argument checks and logging setup.
"""

import datetime
import fractions
import json
import logging
import logging.handlers
import os
import re
from argparse import ArgumentTypeError

import numpy

_logger = logging.getLogger(__name__)

_RANGE_RE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")

_LOG_LEVELS = (logging.NOTSET, logging.DEBUG, logging.INFO, logging.WARNING,
               logging.ERROR, logging.CRITICAL)


def configure_logging(log_file, log_level=logging.INFO,
                      log_format="%(asctime)s %(name)s %(levelname)s: %(message)s"):
    """
    Install the root log handler

    Records go to ``log_file`` through a watched file handler, creating its
    directory when needed. Without a file, or when it cannot be opened,
    they go to standard error.

    :param str|None log_file: path of the log file
    :param int log_level: least severe level recorded
    :param str log_format: :class:`logging.Formatter` format string
    """
    handler = None
    if log_file:
        path = os.path.abspath(log_file)
        try:
            os.makedirs(os.path.dirname(path), exist_ok=True)
            handler = logging.handlers.WatchedFileHandler(path, encoding='utf-8')
        except OSError:
            handler = None
    unusable_file = bool(log_file) and handler is None
    if handler is None:
        handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(log_format))
    logging.root.addHandler(handler)
    logging.root.setLevel(log_level)
    if unusable_file:
        _logger.warning("Cannot open log file %s, logging to standard error",
                        log_file)


def parse_log_level(log_level):
    """
    Numeric value of a log level given as a number or a level name

    :return: the level, or None when the name is unknown
    """
    if isinstance(log_level, int):
        return log_level
    text = str(log_level).strip()
    if text.isdigit():
        return int(text)
    level = logging.getLevelName(text.upper())
    return level if isinstance(level, int) else None


def get_log_levels():
    """Names of the standard log levels, least severe first"""
    for level in _LOG_LEVELS:
        yield logging.getLevelName(level)


def human_readable_timedelta(timedelta):
    """
    Render an elapsed time as hours, minutes and seconds
    """
    delta = abs(timedelta)
    if delta < datetime.timedelta(seconds=1):
        return 'less than one second'
    minutes, seconds = divmod(int(delta.total_seconds()), 60)
    hours, minutes = divmod(minutes, 60)
    parts = []
    for value, unit in ((hours, 'hour'), (minutes, 'minute'),
                        (seconds, 'second')):
        if value > 0:
            parts.append('{} {}{}'.format(value, unit, 's' if value > 1 else ''))
    return ', '.join(parts)


class MultiramEncoder(json.JSONEncoder):
    """
    JSON encoder for certificates and reports

    Objects with a ``to_json`` method are encoded through it, fractions as
    "p/q" strings, vertex sets given as Python sets as sorted lists.
    """
    def default(self, obj):
        if hasattr(obj, 'to_json'):
            return obj.to_json()
        if isinstance(obj, fractions.Fraction):
            return str(obj)
        if isinstance(obj, numpy.integer):
            return int(obj)
        if isinstance(obj, (set, frozenset)):
            return sorted(obj)
        if isinstance(obj, bytes):
            return obj.decode('utf-8', 'replace')
        return super(MultiramEncoder, self).default(obj)


def dump_json(obj):
    """
    Serialise an object to the canonical JSON form used on standard output

    :rtype: str
    """
    return json.dumps(obj, sort_keys=True, cls=MultiramEncoder)


def force_str(obj, encoding='utf-8', errors='replace'):
    """
    Text form of any object; byte strings are decoded with invalid
    sequences replaced
    """
    if isinstance(obj, str):
        return obj
    if isinstance(obj, (bytes, bytearray)):
        return bytes(obj).decode(encoding, errors)
    try:
        return str(obj)
    except Exception:
        return repr(obj)


def _check_int(value, minimum, what):
    if value is None:
        return None
    try:
        int_value = int(value)
    except (TypeError, ValueError):
        int_value = None
    if int_value is None or int_value < minimum:
        raise ArgumentTypeError("'%s' is not a valid %s integer" % (value, what))
    return int_value


def check_non_negative(value):
    """
    argparse type for counts that may be zero
    """
    return _check_int(value, 0, 'non negative')


def check_positive(value):
    """
    argparse type for strictly positive counts
    """
    return _check_int(value, 1, 'positive')


def check_range(value):
    """
    Check for an inclusive integer range written as "a..b"

    :param value: str containing the value to check
    :rtype: tuple[int,int]
    """
    if value is None:
        return None
    match = _RANGE_RE.match(value)
    if not match:
        raise ArgumentTypeError("'%s' is not a valid range (use a..b)" % value)
    low, high = int(match.group(1)), int(match.group(2))
    if low > high:
        raise ArgumentTypeError("'%s' is an empty range" % value)
    return low, high


def check_vertex_list(value):
    """
    Check for a comma separated list of vertex indexes and return the
    vertex set

    :param value: str containing the value to check
    :rtype: int
    """
    if value is None:
        return None
    mask = 0
    for token in value.split(','):
        token = token.strip()
        if not token:
            continue
        if not token.isdigit():
            raise ArgumentTypeError("'%s' is not a valid vertex list" % value)
        mask |= 1 << int(token)
    return mask


def make_rng(seed):
    """
    Build the random generator used by every randomized operation

    :param int seed: a non negative integer, or a generator to reuse
    :rtype: numpy.random.Generator
    """
    if isinstance(seed, numpy.random.Generator):
        return seed
    if seed is None or int(seed) < 0:
        raise ValueError("a non negative integer seed is required")
    return numpy.random.default_rng(int(seed))


def popcount(mask):
    """
    Number of set bits of a vertex set
    """
    return bin(mask).count('1')


def iter_bits(mask):
    """
    Yield the indexes of the set bits in ascending order
    """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask):
    """
    The sorted list of vertices of a vertex set

    :rtype: list[int]
    """
    return list(iter_bits(mask))


def mask_of(vertices):
    """
    Build a vertex set from an iterable of vertex indexes
    """
    mask = 0
    for v in vertices:
        if v < 0:
            raise ValueError("negative vertex index %r" % v)
        mask |= 1 << v
    return mask


def lowest_vertex(mask):
    """
    Index of the lowest vertex of a non empty vertex set, -1 when empty
    """
    return (mask & -mask).bit_length() - 1


def bool_rows_to_masks(matrix):
    """
    Convert a square boolean numpy matrix into a list of row bitsets

    :param numpy.ndarray matrix: boolean adjacency matrix
    :rtype: list[int]
    """
    rows = []
    for row in numpy.asarray(matrix, dtype=bool):
        packed = numpy.packbits(row, bitorder='little')
        rows.append(int.from_bytes(packed.tobytes(), 'little'))
    return rows
