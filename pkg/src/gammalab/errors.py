"""Exception taxonomy shared by the whole package.

The CLI maps these onto process exit codes, so library code should raise
the most specific class that applies and put the violated precondition
(with numbers) into the message.
"""


class GammaLabError(Exception):
    """Base class for all gammalab errors."""


class RefusalError(GammaLabError, ValueError):
    """A documented precondition is not met; the operation refuses to run.

    The message states the precondition that fired, including the required
    working precision where relevant, so callers can re-provision and retry.
    """


class DataError(GammaLabError):
    """External data (zero tables, exponent files) is missing or malformed."""


class InternalError(GammaLabError):
    """An internal invariant failed; indicates a kernel bug, not bad input."""


class TautologyError(GammaLabError):
    """The embedded reference value of the target constant was read inside a
    computation that must not depend on it."""
