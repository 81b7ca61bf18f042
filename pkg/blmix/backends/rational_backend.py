"""Exact rational backend: Fractions in numpy object arrays.

Slow but exact; it is the oracle the float backend is tested against.
"""
from fractions import Fraction
from math import comb, lcm
from typing import Any, Iterator

import numpy as np

from .base import ArithmeticBackend


def exact_epsilon(epsilon: Any) -> Fraction:
    """The decimal a float epsilon was written as, e.g. 0.01 -> 1/100."""
    if isinstance(epsilon, (Fraction, int)):
        return Fraction(epsilon)
    return Fraction(repr(float(epsilon)))


def _common_denominator(values) -> int:
    return lcm(*(Fraction(v).denominator for v in values))


class RationalBackend(ArithmeticBackend):
    """math.comb pmfs and exact object-array matrix products."""

    max_n = 64

    def __init__(self, max_n: int | None = 64) -> None:
        super().__init__()
        self.max_n = max_n

    @property
    def exact(self) -> bool:
        return True

    def hypergeom_vector(self, population: int, successes: int, draws: int) -> np.ndarray:
        self.validate_hypergeom(population, successes, draws)
        out = self.zeros(draws + 1)
        total = comb(population, draws)
        for j in self.support(population, successes, draws):
            out[j] = Fraction(comb(successes, j) * comb(population - successes, draws - j), total)
        return out

    def convolve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = self.zeros(len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
        return out

    def distance_stream(self, matrix: np.ndarray, target: np.ndarray,
                        rows: list[int]) -> Iterator[list[Fraction]]:
        """Integer numerators over a common denominator, one Fraction per start.

        With scale = lcm of the kernel denominators, e_i P^t = num / scale**t
        where num evolves by the integer matrix scale * P. Only the yielded
        distances are reduced.
        """
        scale = _common_denominator(matrix.flat)
        step = np.array([[int(v * scale) for v in row] for row in matrix], dtype=object)
        target_scale = _common_denominator(target)
        target_num = [int(v * target_scale) for v in target]
        num = np.array([[int(i == j) for j in range(len(matrix))] for i in rows], dtype=object)
        denom = 1
        while True:
            yield [
                Fraction(sum(abs(a * target_scale - b * denom) for a, b in zip(row, target_num)),
                         2 * denom * target_scale)
                for row in num
            ]
            num = num @ step
            denom *= scale

    def from_exact(self, value: Any) -> Fraction:
        return Fraction(value)

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def is_unit_sum(self, weights: np.ndarray) -> bool:
        return all(w >= 0 for w in weights) and sum(weights, Fraction(0)) == 1

    def within(self, value: Any, epsilon: Any) -> bool:
        return Fraction(value) <= exact_epsilon(epsilon)
