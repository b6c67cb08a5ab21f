# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#


class MultiramException(Exception):
    """
    The base class of all other Multiram exceptions
    """


class ConfigurationException(MultiramException):
    """
    Base exception for all the Configuration errors
    """


class GraphException(MultiramException):
    """
    Base exception for all the errors related to graph construction
    """


class Graph6FormatError(GraphException):
    """
    A graph6 string could not be decoded
    """


class VertexSetError(GraphException):
    """
    A vertex set refers to vertices outside the host graph
    """


class ColouringFormatError(MultiramException):
    """
    A colouring file could not be parsed
    """

    def __init__(self, message, line=None, column=None):
        super(ColouringFormatError, self).__init__(message)
        self.line = line
        self.column = column

    def __str__(self):
        message = super(ColouringFormatError, self).__str__()
        if self.line is None:
            return message
        if self.column is None:
            return "line %d: %s" % (self.line, message)
        return "line %d, column %d: %s" % (self.line, self.column, message)


class PreconditionError(MultiramException):
    """
    The input does not satisfy the requirements of an operation
    """

    def __init__(self, message, witness=None):
        super(PreconditionError, self).__init__(message)
        self.witness = witness


class InvalidColouringError(PreconditionError):
    """
    A caller supplied colouring contains a forbidden monochromatic object
    """


class ProcedureError(MultiramException):
    """
    A step of a constructive procedure failed
    """

    def __init__(self, step, message, snapshot=None):
        super(ProcedureError, self).__init__(message)
        self.step = step
        self.snapshot = snapshot or {}

    def __str__(self):
        return "step '%s' failed: %s" % (
            self.step, super(ProcedureError, self).__str__())

    def to_json(self):
        return {
            'step': self.step,
            'message': super(ProcedureError, self).__str__(),
            'snapshot': self.snapshot,
        }


class RetryCapExceeded(ProcedureError):
    """
    A randomized procedure ran out of attempts
    """

    def __init__(self, step, message, stats=None):
        super(RetryCapExceeded, self).__init__(step, message, stats)
        self.stats = stats or {}


class SolverException(MultiramException):
    """
    Base exception for all the errors related to the arrowing solver
    """


class DeskRangeExceeded(SolverException):
    """
    The requested search is beyond the configured cap
    """


class DependencyError(SolverException):
    """
    A base Ramsey number required by a formula is not available
    """
