"""
Exception hierarchy for blmix.
Every error raised by the library derives from BLMixError.
"""
from typing import Any


class BLMixError(Exception):
    """Base exception for blmix errors."""

    def __init__(self, message: str, context: str = ""):
        self.message = message
        self.context = context
        super().__init__(f"{context}: {message}" if context else message)


class ParameterError(BLMixError):
    """Invalid chain parameters, distribution bounds, epsilon or grid."""

    pass


class StateError(BLMixError):
    """A state outside the chain's state space."""

    pass


class ShapeError(BLMixError):
    """Two distributions that do not share a support."""

    pass


class UnsupportedSizeError(BLMixError):
    """A quantity that is undefined (or not supported) at this size."""

    pass


class BackendError(BLMixError):
    """Unknown or misused arithmetic backend."""

    pass


class RegimeError(BLMixError):
    """An operation called outside the regime it is defined for."""

    pass


class CriticalRegimeError(RegimeError):
    """lambda1 vanishes: t_n is undefined, use q_n instead."""

    pass


class NonMixingError(RegimeError):
    """The chain never mixes (k = m = n - m forces a deterministic swap)."""

    pass


class InconclusiveError(BLMixError):
    """The iteration cap was reached before d(t) crossed epsilon."""

    def __init__(self, message: str, curve: Any = None, context: str = ""):
        self.curve = curve
        super().__init__(message, context=context)
