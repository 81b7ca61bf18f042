"""64-bit floating point backend."""
import math
from typing import Any

import numpy as np
from scipy.stats import hypergeom

from .base import ArithmeticBackend

#: Row-sum tolerance for probability vectors.
UNIT_SUM_TOL = 1e-12
#: Slack absorbed when comparing d(t) against epsilon.
THRESHOLD_SLACK = 1e-12


class FloatBackend(ArithmeticBackend):
    """scipy hypergeometric pmfs renormalized with fsum, float64 matrices."""

    @property
    def exact(self) -> bool:
        return False

    def hypergeom_vector(self, population: int, successes: int, draws: int) -> np.ndarray:
        self.validate_hypergeom(population, successes, draws)
        out = np.zeros(draws + 1, dtype=np.float64)
        support = self.support(population, successes, draws)
        if len(support) == 1:
            out[support.start] = 1.0
            return out
        j = np.arange(support.start, support.stop)
        pmf = hypergeom.pmf(j, population, successes, draws)
        # unit mass to within one rounding per entry
        out[j] = pmf / math.fsum(pmf.tolist())
        return out

    def convolve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.convolve(a, b)

    def from_exact(self, value: Any) -> float:
        return float(value)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.float64)

    def is_unit_sum(self, weights: np.ndarray) -> bool:
        if np.any(weights < 0):
            return False
        return abs(math.fsum(weights.tolist()) - 1.0) <= UNIT_SUM_TOL

    def within(self, value: Any, epsilon: float) -> bool:
        return float(value) <= epsilon + THRESHOLD_SLACK
