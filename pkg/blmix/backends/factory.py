"""
Backend factory for creating arithmetic backend instances.
Lets every operation accept either a backend name or an instance.
"""
from typing import Dict, Type

from ..errors import BackendError
from .base import ArithmeticBackend
from .float_backend import FloatBackend
from .rational_backend import RationalBackend

DEFAULT_BACKEND = 'float'


class BackendFactory:
    """Factory for creating arithmetic backends."""

    # Registry of available backends
    _backends: Dict[str, Type[ArithmeticBackend]] = {
        'float': FloatBackend,
        'rational': RationalBackend,
    }

    @classmethod
    def register_backend(cls, name: str, backend_class: Type[ArithmeticBackend]):
        """Register a new backend."""
        cls._backends[name] = backend_class

    @classmethod
    def get_available_backends(cls) -> list[str]:
        """Get list of available backend names."""
        return list(cls._backends.keys())

    @classmethod
    def is_backend_available(cls, name: str) -> bool:
        return name in cls._backends

    @classmethod
    def create_backend(cls, name: str, **kwargs) -> ArithmeticBackend:
        """
        Create a backend instance.

        Args:
            name: Name of the backend (float, rational)
            **kwargs: Backend-specific options (e.g. max_n for rational)

        Returns:
            ArithmeticBackend instance

        Raises:
            BackendError: If the backend is not available
        """
        if not cls.is_backend_available(name):
            available = ', '.join(cls.get_available_backends())
            raise BackendError(
                f"Backend '{name}' not available. Available: {available}",
                context=name,
            )
        return cls._backends[name](**kwargs)


def resolve_backend(backend: str | ArithmeticBackend | None = None) -> ArithmeticBackend:
    """Accept a backend instance, a registered name, or None for the default."""
    if isinstance(backend, ArithmeticBackend):
        return backend
    return BackendFactory.create_backend(backend or DEFAULT_BACKEND)
