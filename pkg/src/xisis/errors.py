"""Exception types raised by the library."""


class XisisError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidInput(XisisError):
    """Malformed input: wrong shapes, non-finite values, bad parameters."""


class DegenerateInput(XisisError):
    """A variable is constant where the statistic needs variation."""


class DegenerateResponse(XisisError):
    """The response is constant (or has a degenerate marginal law)."""


class UndefinedMetric(XisisError):
    """A ratio metric has a zero denominator; the message names the ratio."""
