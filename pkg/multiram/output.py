# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""
This module controls how the output of Multiram is rendered.

Library code never prints. Commands report through the functions below,
which forward every message to the active writer and mirror it to the
logger of the calling module. Results go through :func:`init` and
:func:`result`, dispatched to the ``init_<command>`` and
``result_<command>`` methods of the writer.
"""

import inspect
import logging
import sys

from multiram.utils import dump_json, force_str

__all__ = [
    'error_occurred', 'debug', 'info', 'warning', 'error', 'exception',
    'init', 'result', 'close_and_exit', 'close', 'set_output_writer',
    'AVAILABLE_WRITERS', 'DEFAULT_WRITER', 'ConsoleOutputWriter',
    'JsonOutputWriter'
]

#: True once an error or an exception has been reported
error_occurred = False

#: Exit status used by close_and_exit after an error
error_exit_code = 1

#: Wrap errors and warnings in ANSI colour sequences
ansi_colors_enabled = False

#: Printed by line oriented commands that found nothing
NONE_MARKER = 'NONE'

_ANSI_RED = '31'
_ANSI_YELLOW = '33'


def _paint(message, code):
    if not ansi_colors_enabled:
        return message
    return '\033[%sm%s\033[0m' % (code, message)


def _format_message(message, args):
    """
    ``message % args``; a single mapping argument is used as the mapping
    """
    if not args:
        return message
    if len(args) == 1 and isinstance(args[0], dict):
        return message % args[0]
    return message % args


def _caller_logger():
    # frames: this helper, _put, the public function, its caller
    module = inspect.getmodule(inspect.stack()[3][0])
    return logging.getLogger(module.__name__ if module else __name__)


def _put(level, message, args, is_error=False, log=True):
    global error_occurred
    if is_error:
        error_occurred = True
        _writer.error_occurred()
    if message:
        message = force_str(message)
    getattr(_writer, level)(message, *args)
    if log:
        traceback = level == 'exception'
        log_level = logging.ERROR if traceback else logging.getLevelName(level.upper())
        _caller_logger().log(log_level, message, *args, exc_info=traceback)


def is_quiet():
    return _writer.is_quiet()


def is_debug():
    return _writer.is_debug()


def debug(message, *args, log=True):
    """Report a diagnostic, shown in debug mode only"""
    _put('debug', message, args, log=log)


def info(message, *args, log=True):
    _put('info', message, args, log=log)


def warning(message, *args, log=True):
    """Report a problem that does not stop the command, e.g. an ignored setting"""
    _put('warning', message, args, log=log)


def error(message, *args, ignore=False, log=True):
    """
    Report a failure. Unless ``ignore`` is set the process later exits
    with :data:`error_exit_code`.
    """
    _put('error', message, args, is_error=not ignore, log=log)


def exception(message, *args, ignore=False, raise_exception=None, log=True):
    """
    Report an unexpected failure, logging the traceback being handled

    :param raise_exception: when true, raise once reported: the result of
        calling it when callable, the object itself when it is an
        exception, the exception being handled otherwise
    """
    _put('exception', message, args, is_error=not ignore, log=log)
    if not raise_exception:
        return
    if callable(raise_exception):
        raise raise_exception(message)
    if isinstance(raise_exception, BaseException):
        raise raise_exception
    raise


def _forward(prefix, command, args, kwargs):
    handler = getattr(_writer, '%s_%s' % (prefix, command), None)
    if not callable(handler):
        exception('The %s writer does not support the "%s" command',
                  _writer.__class__.__name__, command)
        close_and_exit()
    return handler(*args, **kwargs)


def init(command, *args, **kwargs):
    """Let the writer prepare for ``command``"""
    _forward('init', command, args, kwargs)


def result(command, *args, **kwargs):
    """Hand the outcome of ``command`` to the writer"""
    _forward('result', command, args, kwargs)


def close():
    _writer.close()


def close_and_exit():
    """
    Flush the writer and terminate, with :data:`error_exit_code` when an
    error was reported and 0 otherwise
    """
    close()
    sys.exit(error_exit_code if error_occurred else 0)


def set_output_writer(new_writer, *args, **kwargs):
    """
    Close the active writer and replace it

    :param new_writer: a key of :data:`AVAILABLE_WRITERS`, built with the
        remaining arguments, or a writer object used as is
    """
    global _writer
    _writer.close()
    if new_writer in AVAILABLE_WRITERS:
        _writer = AVAILABLE_WRITERS[new_writer](*args, **kwargs)
    else:
        _writer = new_writer


def _construct_summary(report, colouring_file, partition_file):
    return {
        'claims': [claim.to_json() for claim in report.claims],
        'colouring_file': colouring_file,
        'order': report.colouring.order,
        'partition': report.partition.to_json(),
        'partition_file': partition_file,
    }


def _bracket_summary(graph, low, high):
    return {'graph': graph.to_graph6(), 'high': high, 'low': low,
            'point': low if low == high else None}


class ConsoleOutputWriter(object):
    """
    Writes results on standard output and diagnostics on standard error.

    Line oriented results (graph6 lines, the NONE marker) are printed as
    plain text, everything else as JSON with sorted keys.
    """

    def __init__(self, debug=False, quiet=False):
        """
        :param bool debug: print debug messages on standard error
        :param bool quiet: don't print info messages
        """
        self._debug = debug
        self._quiet = quiet

    @staticmethod
    def _emit(stream, message, args):
        text = '\n' if message is None else _format_message(message, args) + '\n'
        stream.write(text)
        stream.flush()

    def _json(self, obj):
        self.info(dump_json(obj))

    def is_quiet(self):
        return self._quiet

    def is_debug(self):
        return self._debug

    def debug(self, message, *args):
        if self._debug:
            self._emit(sys.stderr, 'DEBUG: %s' % message, args)

    def info(self, message, *args):
        if not self._quiet:
            self._emit(sys.stdout, message, args)

    def warning(self, message, *args):
        self._emit(sys.stderr, _paint('WARNING: %s' % message, _ANSI_YELLOW), args)

    def error(self, message, *args):
        self._emit(sys.stderr, _paint('ERROR: %s' % message, _ANSI_RED), args)

    def exception(self, message, *args):
        self._emit(sys.stderr, _paint('EXCEPTION: %s' % message, _ANSI_RED), args)

    def error_occurred(self):
        """
        Called before the message methods when the report is an error
        """

    def close(self):
        pass

    def init_families(self, graph, kind):
        pass

    def result_families(self, graph, kind, family):
        """
        Print one graph6 line per member
        """
        for line in family.to_json():
            self.info(line)

    def init_construct(self, kind):
        pass

    def result_construct(self, report, colouring_file, partition_file):
        self._json(_construct_summary(report, colouring_file, partition_file))

    def init_detect(self, what):
        pass

    def result_detect(self, what, certificate):
        """
        Print the certificate as JSON, or NONE when nothing was found
        """
        if certificate is None:
            self.info(NONE_MARKER)
        else:
            self._json(certificate.to_json())

    def init_tile(self, k):
        pass

    def result_tile(self, certificate):
        self._json(certificate.to_json())

    def init_solve(self, red, blue):
        pass

    def result_solve(self, ramsey_result):
        self._json(ramsey_result.to_json())

    def init_verify(self, kind):
        pass

    def result_verify(self, kind, valid, details=None):
        """
        Print the verdict of a certificate check
        """
        self._json({'details': details, 'kind': kind, 'valid': valid})

    def init_formula(self, kind):
        pass

    def result_formula(self, kind, formula):
        """
        :param dict formula: the JSON form of the formula evaluation
        """
        self._json(formula)

    def init_bracket(self, graph):
        pass

    def result_bracket(self, graph, low, high):
        self._json(_bracket_summary(graph, low, high))


class JsonOutputWriter(ConsoleOutputWriter):
    """
    Collects messages and results into one JSON object, printed on close.

    Messages are kept in the ``_DEBUG``, ``_INFO``, ``_WARNING``, ``_ERROR``
    and ``_EXCEPTION`` lists; each command stores its result under its own
    name.
    """

    def __init__(self, *args, **kwargs):
        super(JsonOutputWriter, self).__init__(*args, **kwargs)
        self.json_output = {}

    def _collect(self, field, message, args):
        self.json_output.setdefault(field, []).append(_format_message(message, args))

    def debug(self, message, *args):
        if self._debug:
            self._collect('_DEBUG', message, args)

    def info(self, message, *args):
        self._collect('_INFO', message, args)

    def warning(self, message, *args):
        self._collect('_WARNING', message, args)

    def error(self, message, *args):
        self._collect('_ERROR', message, args)

    def exception(self, message, *args):
        self._collect('_EXCEPTION', message, args)

    def close(self):
        if not self._quiet:
            sys.stdout.write(dump_json(self.json_output) + '\n')
            sys.stdout.flush()
        self.json_output = {}

    def result_families(self, graph, kind, family):
        self.json_output['families'] = {
            'graph': graph.to_graph6(),
            'kind': kind,
            'members': family.to_json(),
        }

    def result_construct(self, report, colouring_file, partition_file):
        self.json_output['construct'] = _construct_summary(
            report, colouring_file, partition_file)

    def result_detect(self, what, certificate):
        self.json_output['detect'] = {
            'found': certificate is not None,
            'certificate': certificate.to_json() if certificate is not None else None,
            'what': what,
        }

    def result_tile(self, certificate):
        self.json_output['tile'] = certificate.to_json()

    def result_solve(self, ramsey_result):
        self.json_output['solve'] = ramsey_result.to_json()

    def result_verify(self, kind, valid, details=None):
        self.json_output['verify'] = {'details': details, 'kind': kind,
                                      'valid': valid}

    def result_formula(self, kind, formula):
        self.json_output['formula'] = formula

    def result_bracket(self, graph, low, high):
        self.json_output['bracket'] = _bracket_summary(graph, low, high)


#: Registry of the writers selectable with ``--format``
AVAILABLE_WRITERS = {
    'console': ConsoleOutputWriter,
    'json': JsonOutputWriter,
}

DEFAULT_WRITER = 'console'

_writer = AVAILABLE_WRITERS[DEFAULT_WRITER]()
