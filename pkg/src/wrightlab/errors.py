"""Exception types raised by wrightlab."""


class WrightError(Exception):
    """Base class for all library errors."""


class DomainError(WrightError, ValueError):
    """Parameters are outside the region where a routine is defined."""


class RangeError(WrightError, ValueError):
    """Argument lies outside the supported evaluation range."""


class ConvergenceError(WrightError, ArithmeticError):
    """A series or iteration failed to converge within its budget."""


class NumericOverflowError(WrightError, OverflowError):
    """Result does not fit in a double; use the log-scaled variant."""


class AccuracyError(WrightError, ArithmeticError):
    """Requested accuracy was not reached.

    ``best`` carries the best estimate obtained (may be None).
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class UnsupportedError(WrightError, NotImplementedError):
    """Known configuration that this library deliberately does not handle."""
