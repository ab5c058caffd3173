"""
    Exceptions raised by orliczwidths.

    Every error carries a message and the objects involved,
    so that callers (and the CLI) can report what has to be fixed.
"""


class OrliczError(Exception):
    """
        Base Exception for every error raised by the numerical modules.
    """

    def __init__(self, message, *objects):
        super().__init__(message)
        self.message = message
        self.objects = objects

    def __str__(self):
        if self.objects:
            return '%s (involving %s)' % (
                self.message, ', '.join(map(repr, self.objects))
            )

        return self.message


class DomainError(OrliczError, ValueError):
    """ An argument lies outside the domain of the operation """


class NonInvertibleGaugeError(OrliczError):
    """ The gauge has a flat segment, so it has no genuine inverse """


class HypothesisError(OrliczError):
    """
        A hypothesis of the theorem behind an operation fails.
        The ConditionReport that failed, if any, is kept in `report`.
    """

    def __init__(self, message, *objects, report=None):
        super().__init__(message, *objects)
        self.report = report

    def __str__(self):
        s = super().__str__()

        if self.report is not None:
            s += '\n' + self.report.describe()

        return s


class TruncationError(OrliczError):
    """
        The finite truncation d (with its declared tail bound)
        can't certify the requested quantity.
    """


class OracleScaleError(OrliczError):
    """ A brute-force oracle was asked for an instance beyond its scale """


class SpecParseError(OrliczError, ValueError):
    """ A gauge/weight spec string or an input file could not be parsed """
