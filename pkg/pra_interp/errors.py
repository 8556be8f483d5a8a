"""
Exception hierarchy of the Presburger toolkit.

Every failure that a caller can act upon derives from PresburgerError, so
that command-line front ends can report it as a one-line diagnostic.
"""


class PresburgerError(Exception):
    pass


class FormulaSyntaxError(PresburgerError):

    def __init__(self, message, line=1, column=1):
        super(FormulaSyntaxError, self).__init__(
            '%s (line %d, column %d)' % (message, line, column))
        self.line = line
        self.column = column


class UnsupportedCounting(PresburgerError):
    pass


class UnboundVariable(PresburgerError):
    pass


class NotQuantifierFree(PresburgerError):
    pass


class FreeVariablesPresent(PresburgerError):
    pass


class DimensionMismatch(PresburgerError):
    pass


class FiniteSet(PresburgerError):
    pass


class BadSplit(PresburgerError):
    pass


class NotALinearOrder(PresburgerError):

    def __init__(self, message, checks=None):
        super(NotALinearOrder, self).__init__(message)
        self.checks = checks or []


class InternalRankBoundViolation(PresburgerError):
    pass


class NotOmegaType(PresburgerError):
    pass


class NotAFunction(PresburgerError):
    pass


class SignatureMismatch(PresburgerError):
    pass


class BasicsFailed(PresburgerError):

    def __init__(self, report):
        failed = [name for name, _, verdict in report.checks if not verdict]
        super(BasicsFailed, self).__init__(
            'interpretation basics fail: %s' % ', '.join(failed))
        self.report = report


class FiniteDomain(PresburgerError):
    pass


class NotAModel(PresburgerError):

    def __init__(self, checks):
        failed = [name for name, _, verdict in checks if not verdict]
        super(NotAModel, self).__init__(
            'translation is not a model of (N,+): %s' % ', '.join(failed))
        self.checks = checks


class SquareInput(PresburgerError):
    pass


class InternalConsistencyError(PresburgerError):
    pass
