"""
Base interface for arithmetic backends.
All backends must inherit from ArithmeticBackend and implement these methods.
"""
from __future__ import annotations

import re
from abc import ABC, abstractmethod
from typing import Any, Iterator

import numpy as np

from ..errors import ParameterError, UnsupportedSizeError


class ArithmeticBackend(ABC):
    """
    Abstract base class for the number systems chains are evaluated in.

    Vectors and matrices are numpy arrays in both backends: float64 for the
    floating-point backend, object arrays of Fractions for the exact one.
    """

    #: Largest n the backend accepts; None means unlimited.
    max_n: int | None = None

    def __init__(self) -> None:
        # FloatBackend -> float, RationalBackend -> rational
        class_name = self.__class__.__name__
        if class_name.endswith("Backend"):
            class_name = class_name[:-7]
        self.name = re.sub(r'(?<!^)(?=[A-Z])', '_', class_name).lower()

    @property
    @abstractmethod
    def exact(self) -> bool:
        """True when arithmetic is exact."""

    @abstractmethod
    def hypergeom_vector(self, population: int, successes: int, draws: int) -> np.ndarray:
        """
        Hypergeometric law of the number of successes, indexed j = 0..draws.

        Args:
            population: Population size N
            successes: Number of successes K in the population
            draws: Sample size drawn without replacement

        Returns:
            Vector of length draws + 1 (zero outside the support)

        Raises:
            ParameterError: If the bounds are invalid
        """

    @abstractmethod
    def convolve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Full discrete convolution by direct summation."""

    @abstractmethod
    def from_exact(self, value: Any) -> Any:
        """Convert an exact (int or Fraction) value to a backend scalar."""

    @abstractmethod
    def zeros(self, shape: int | tuple[int, ...]) -> np.ndarray:
        pass

    @abstractmethod
    def is_unit_sum(self, weights: np.ndarray) -> bool:
        """Whether the weights sum to one under the backend's tolerance rule."""

    @abstractmethod
    def within(self, value: Any, epsilon: float) -> bool:
        """Threshold comparison value <= epsilon under the backend's rule."""

    def hypergeom_pmf(self, population: int, successes: int, draws: int, j: int) -> Any:
        """Single hypergeometric probability; zero outside the support."""
        self.validate_hypergeom(population, successes, draws)
        if not 0 <= j <= draws:
            return self.from_exact(0)
        return self.hypergeom_vector(population, successes, draws)[j]

    def identity(self, size: int) -> np.ndarray:
        out = self.zeros((size, size))
        for i in range(size):
            out[i, i] = self.from_exact(1)
        return out

    def half_l1(self, a: np.ndarray, b: np.ndarray) -> Any:
        """Half the L1 distance along the last axis."""
        return np.abs(a - b).sum(axis=-1) / 2

    def distance_stream(self, matrix: np.ndarray, target: np.ndarray,
                        rows: list[int]) -> Iterator[list[Any]]:
        """Yield half_l1(e_i P^t, target) for each i in rows, t = 0, 1, ..."""
        dists = self.identity(len(matrix))[rows]
        while True:
            yield list(self.half_l1(dists, target))
            dists = dists @ matrix

    def to_float(self, values: Any) -> Any:
        if isinstance(values, np.ndarray):
            return values.astype(np.float64)
        return float(values)

    def check_size(self, n: int) -> None:
        """Raise if the backend refuses chains with n balls."""
        if self.max_n is not None and n > self.max_n:
            raise UnsupportedSizeError(
                f"n={n} exceeds the backend limit of {self.max_n}",
                context=self.name,
            )

    @staticmethod
    def validate_hypergeom(population: int, successes: int, draws: int) -> None:
        if not 0 <= successes <= population:
            raise ParameterError(f"need 0 <= K <= N, got K={successes}, N={population}")
        if not 0 <= draws <= population:
            raise ParameterError(f"need 0 <= draws <= N, got draws={draws}, N={population}")

    @staticmethod
    def support(population: int, successes: int, draws: int) -> range:
        return range(max(0, draws - (population - successes)), min(successes, draws) + 1)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}()"
