"""Total-variation distance, distribution evolution and worst-case mixing curves."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterator, Optional

import numpy as np

from ..chain import ProbVector, TransitionKernel, stationary_pmf
from ..errors import InconclusiveError, NonMixingError, ParameterError, ShapeError
from ..logging_config import get_logger
from ..spectral import Regime, classify, t_n

logger = get_logger(__name__)

DEFAULT_EPSILON = 0.01
DEFAULT_CAP_FLOOR = 1000
#: d(t + 1) may exceed d(t) by this much before a warning is logged.
MONOTONE_SLACK = 1e-12


class CurveStatus(Enum):
    MIXED = "mixed"
    NON_MIXING = "non-mixing"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class MixingCurve:
    """Worst-case distance to stationarity d(0), d(1), ... up to the first crossing.

    ``worst_starts[t]`` is the start state attaining d(t). ``approximate`` is
    set when only the extreme starts were evolved.
    """

    params: Any
    epsilon: float
    d: tuple[Any, ...]
    status: CurveStatus
    t_mix: Optional[int]
    cap: int
    worst_starts: tuple[int, ...] = ()
    approximate: bool = False
    backend_name: str = "float"

    @property
    def non_mixing(self) -> bool:
        return self.status is CurveStatus.NON_MIXING

    @property
    def d_floats(self) -> list[float]:
        return [float(v) for v in self.d]

    def require_mixed(self) -> int:
        """Return t_mix or raise.

        Raises:
            NonMixingError: If the chain is a deterministic full swap
            InconclusiveError: If the cap was reached first
        """
        if self.status is CurveStatus.NON_MIXING:
            raise NonMixingError("k = m = n - m, the chain never mixes", context=str(self.params))
        if self.status is CurveStatus.INCONCLUSIVE:
            raise InconclusiveError(
                f"d({self.cap}) = {float(self.d[-1]):.3g} still above epsilon={self.epsilon}",
                curve=self, context=str(self.params),
            )
        return self.t_mix  # type: ignore[return-value]


def tv_distance(a: ProbVector, b: ProbVector) -> Any:
    """Half the L1 distance between two laws on the same support."""
    if a.support != b.support:
        raise ShapeError(f"supports differ: {a.support} vs {b.support}")
    value = a.backend.half_l1(a.weights, b.weights)
    return value if a.backend.exact else float(value)


def evolve(kernel: TransitionKernel, start: ProbVector, t: int) -> ProbVector:
    """start P^t by t vector-matrix products."""
    if t < 0:
        raise ParameterError(f"t must be nonnegative, got {t}")
    if start.support != kernel.support:
        raise ShapeError(f"start supported on {start.support}, kernel on {kernel.support}")
    weights = start.weights
    for _ in range(t):
        weights = weights @ kernel.matrix
    return ProbVector(kernel.support, weights, kernel.backend)


def default_cap(params: Any, floor: int = DEFAULT_CAP_FLOOR) -> int:
    """max(floor, ceil(10 t_n)) for generic instances, floor otherwise."""
    if classify(params) is Regime.GENERIC:
        return max(floor, math.ceil(10 * t_n(params)))
    return floor


def _start_indices(kernel: TransitionKernel, extremes_only: bool) -> list[int]:
    if extremes_only:
        return sorted({0, kernel.size - 1})
    return list(range(kernel.size))


def _iter_worst(kernel: TransitionKernel, extremes_only: bool) -> Iterator[tuple[int, Any, int]]:
    """Yield (t, d(t), worst start) forever, one matrix product per step."""
    backend = kernel.backend
    pi = stationary_pmf(kernel.params, backend).weights
    rows = _start_indices(kernel, extremes_only)
    for t, per_start in enumerate(backend.distance_stream(kernel.matrix, pi, rows)):
        worst = max(range(len(per_start)), key=per_start.__getitem__)
        yield t, per_start[worst], kernel.support.lo + rows[worst]


def worst_case_curve(kernel: TransitionKernel, epsilon: float = DEFAULT_EPSILON,
                     cap: Optional[int] = None, extremes_only: bool = False) -> MixingCurve:
    """Evolve every point-mass start together until d(t) <= epsilon.

    The k = m = n - m chain is reported non-mixing without iterating.
    Reaching ``cap`` first gives an INCONCLUSIVE curve; callers that need a
    number use ``require_mixed``.
    """
    if not 0 < epsilon < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    params = kernel.params
    backend = kernel.backend
    if cap is None:
        cap = default_cap(params)
    if cap < 1:
        raise ParameterError(f"cap must be at least 1, got {cap}")

    common = dict(params=params, epsilon=epsilon, cap=cap,
                  approximate=extremes_only, backend_name=backend.name)
    if params.is_full_swap:
        logger.debug("%s is a full swap, skipping iteration", params)
        return MixingCurve(d=(), status=CurveStatus.NON_MIXING, t_mix=None, **common)

    d: list[Any] = []
    starts: list[int] = []
    for t, value, start in _iter_worst(kernel, extremes_only):
        if d and value > d[-1] + (0 if backend.exact else MONOTONE_SLACK):
            logger.warning("d(t) increased at t=%d for %s: %s > %s", t, params, value, d[-1])
        d.append(value)
        starts.append(start)
        if backend.within(value, epsilon):
            logger.debug("%s mixed at t=%d (d=%s)", params, t, value)
            return MixingCurve(d=tuple(d), status=CurveStatus.MIXED, t_mix=t,
                               worst_starts=tuple(starts), **common)
        if t >= cap:
            break

    logger.info("%s: cap %d reached with d=%s", params, cap, d[-1])
    return MixingCurve(d=tuple(d), status=CurveStatus.INCONCLUSIVE, t_mix=None,
                       worst_starts=tuple(starts), **common)


def tv_profile(kernel: TransitionKernel, steps: int,
               extremes_only: bool = False) -> list[tuple[int, float, int]]:
    """(t, d(t), worst start) for t = 0..steps, without stopping at a threshold."""
    if steps < 0:
        raise ParameterError(f"steps must be nonnegative, got {steps}")
    profile = []
    for t, value, start in _iter_worst(kernel, extremes_only):
        profile.append((t, float(value), start))
        if t >= steps:
            break
    return profile


def stationary_residual(kernel: TransitionKernel) -> Any:
    """max_y |(pi P)(y) - pi(y)|."""
    pi = stationary_pmf(kernel.params, kernel.backend).weights
    diff = pi @ kernel.matrix - pi
    return max(abs(v) for v in np.asarray(diff).tolist())
