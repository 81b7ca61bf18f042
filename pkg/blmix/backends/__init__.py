"""
Arithmetic backends.
"""
from .base import ArithmeticBackend
from .factory import DEFAULT_BACKEND, BackendFactory, resolve_backend
from .float_backend import FloatBackend
from .rational_backend import RationalBackend, exact_epsilon

__all__ = [
    'ArithmeticBackend',
    'BackendFactory',
    'DEFAULT_BACKEND',
    'FloatBackend',
    'RationalBackend',
    'exact_epsilon',
    'resolve_backend',
]
