"""Probability vectors, transition kernels and the stationary law.

A step of the chain moves H1 ~ Hyp(m, x, k) red balls out of the left urn
and H2 ~ Hyp(n - m, r - x, k) red balls into it, so the next state is
x - H1 + H2 with H1 and H2 independent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Any

import numpy as np

from ..backends import ArithmeticBackend, resolve_backend
from ..errors import ParameterError, ShapeError, StateError
from ..logging_config import get_logger
from .params import ChainParams, StateSpace

logger = get_logger(__name__)


def _frozen(values: np.ndarray) -> np.ndarray:
    out = np.array(values, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class ProbVector:
    """A probability distribution over a state space, tied to a backend."""

    support: StateSpace
    weights: np.ndarray
    backend: ArithmeticBackend = field(compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.weights.shape != (self.support.size,):
            raise ShapeError(
                f"weights of shape {self.weights.shape} for a support of size {self.support.size}"
            )
        if not self.backend.is_unit_sum(self.weights):
            raise ParameterError("weights do not form a probability vector", context=self.backend.name)
        object.__setattr__(self, "weights", _frozen(self.weights))

    @classmethod
    def point_mass(cls, support: StateSpace, x: int,
                   backend: str | ArithmeticBackend | None = None) -> ProbVector:
        backend = resolve_backend(backend)
        weights = backend.zeros(support.size)
        weights[support.index(x)] = backend.from_exact(1)
        return cls(support=support, weights=weights, backend=backend)

    def __getitem__(self, x: int) -> Any:
        return self.weights[self.support.index(x)]

    def items(self) -> list[tuple[int, Any]]:
        return list(zip(self.support.states(), self.weights))

    def mean(self) -> Any:
        return sum(x * w for x, w in self.items())

    def as_floats(self) -> np.ndarray:
        return self.backend.to_float(self.weights)

    def as_dict(self, nonzero: bool = True) -> dict[int, Any]:
        return {x: w for x, w in self.items() if w or not nonzero}


@dataclass(frozen=True, eq=False)
class TransitionKernel:
    """Row-stochastic matrix over the state space; immutable once built."""

    params: ChainParams
    matrix: np.ndarray
    backend: ArithmeticBackend = field(compare=False, repr=False)

    def __post_init__(self) -> None:
        size = self.params.state_space.size
        if self.matrix.shape != (size, size):
            raise ShapeError(f"kernel of shape {self.matrix.shape}, expected {(size, size)}")
        object.__setattr__(self, "matrix", _frozen(self.matrix))

    @property
    def support(self) -> StateSpace:
        return self.params.state_space

    @property
    def size(self) -> int:
        return self.support.size

    @cached_property
    def rows(self) -> tuple[ProbVector, ...]:
        return tuple(ProbVector(self.support, row, self.backend) for row in self.matrix)

    def row(self, x: int) -> ProbVector:
        return self.rows[self.support.index(x)]

    def __getitem__(self, xy: tuple[int, int]) -> Any:
        x, y = xy
        return self.matrix[self.support.index(x), self.support.index(y)]


def hypergeom_pmf(population: int, successes: int, draws: int, j: int,
                  backend: str | ArithmeticBackend | None = None) -> Any:
    """C(K, j) C(N - K, draws - j) / C(N, draws), zero outside the support."""
    return resolve_backend(backend).hypergeom_pmf(population, successes, draws, j)


def _row_weights(params: ChainParams, x: int, backend: ArithmeticBackend) -> np.ndarray:
    n, m, r, k = params.n, params.m, params.r, params.k
    space = params.state_space
    out_law = backend.hypergeom_vector(m, x, k)
    in_law = backend.hypergeom_vector(n - m, r - x, k)
    # conv[t] = P(H2 - H1 = t - k), i.e. the mass landing on y = x + t - k
    conv = backend.convolve(in_law, out_law[::-1])
    weights = backend.zeros(space.size)
    lo = max(space.lo, x - k)
    hi = min(space.hi, x + k)
    weights[lo - space.lo: hi - space.lo + 1] = conv[lo - x + k: hi - x + k + 1]
    return weights


def transition_row(params: ChainParams, x: int,
                   backend: str | ArithmeticBackend | None = None) -> ProbVector:
    """Law of the next state from x.

    Raises:
        StateError: If x is outside the state space
    """
    backend = resolve_backend(backend)
    space = params.state_space
    if x not in space:
        raise StateError(f"state {x} outside [{space.lo}, {space.hi}]", context=f"{params}")
    return ProbVector(space, _row_weights(params, x, backend), backend)


def build_kernel(params: ChainParams,
                 backend: str | ArithmeticBackend | None = None) -> TransitionKernel:
    """Assemble every row into an immutable kernel."""
    backend = resolve_backend(backend)
    backend.check_size(params.n)
    space = params.state_space
    matrix = backend.zeros((space.size, space.size))
    for i, x in enumerate(space.states()):
        matrix[i] = _row_weights(params, x, backend)
    kernel = TransitionKernel(params=params, matrix=matrix, backend=backend)
    for i, row in enumerate(matrix):
        if not backend.is_unit_sum(row):
            raise ParameterError(f"row {space.lo + i} does not sum to one", context=backend.name)
    logger.debug("built %dx%d %s kernel for %s", space.size, space.size, backend.name, params)
    return kernel


def stationary_pmf(params: ChainParams,
                   backend: str | ArithmeticBackend | None = None) -> ProbVector:
    """Hyp(n, r, m) restricted to the state space."""
    backend = resolve_backend(backend)
    space = params.state_space
    law = backend.hypergeom_vector(params.n, params.r, params.m)
    return ProbVector(space, law[space.lo: space.hi + 1], backend)


def integer_kernel(params: ChainParams) -> tuple[np.ndarray, int]:
    """(N, D) with p(x, y) = N[x, y] / D for every state pair.

    D = C(m, k) C(n - m, k) is shared by all rows, so N holds Python ints
    and exact checks avoid Fraction arithmetic entirely.
    """
    n, m, r, k = params.n, params.m, params.r, params.k
    space = params.state_space
    numerators = np.zeros((space.size, space.size), dtype=object)
    for i, x in enumerate(space.states()):
        out_counts = [comb(x, j) * comb(m - x, k - j) for j in range(k + 1)]
        in_counts = [comb(r - x, j) * comb(n - m - r + x, k - j) for j in range(k + 1)]
        for a, ca in enumerate(in_counts):
            if not ca:
                continue
            for b, cb in enumerate(out_counts):
                if cb:
                    numerators[i, space.index(x + a - b)] += ca * cb
    return numerators, comb(m, k) * comb(n - m, k)
