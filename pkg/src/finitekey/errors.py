"""Exception hierarchy shared by all finitekey modules."""


class KeyRateError(Exception):
    """Base class for all errors raised by finitekey."""


class DomainError(KeyRateError, ValueError):
    """An input lies outside the mathematical domain of a formula."""


class UnphysicalInput(KeyRateError, ValueError):
    """An observation pair admits no quantum state in the bound's domain.

    Raised instead of clamping: silently truncating would understate the
    eavesdropper's information.
    """


class MissingWeight(KeyRateError, ValueError):
    """A budget weight required by the requested mode is absent."""


class InvalidWeights(KeyRateError, ValueError):
    """Budget weights are inconsistent (wrong sum, sign, or extra fields)."""


class InfeasibleTraceOut(KeyRateError):
    """The de Finetti trace-out constraints cannot be met for this (m, k).

    Signals the optimizer to skip the configuration rather than abort.
    """


class ScaleError(KeyRateError, ValueError):
    """A brute-force oracle was asked to run beyond its intended scale."""


class NoPositiveRate(KeyRateError):
    """No positive key rate exists anywhere in the searched bracket."""
