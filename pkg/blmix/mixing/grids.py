"""Ratio triples, sweep grids and the built-in table / figure presets."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..chain import ChainParams
from ..errors import ParameterError
from ..spectral import Regime, limiting_lambda1

#: Products ratio * n further than this from an integer are rejected.
INTEGRALITY_TOL = 1e-9
DEFAULT_NEAR_CRITICAL_TOL = 0.05

TABLE_RATIOS = tuple(round(0.02 * i, 2) for i in range(1, 26))
TABLE_NS = tuple(range(50, 1001, 50))


def integral_count(ratio: float, n: int, name: str = "count") -> int:
    """ratio * n as an integer.

    Raises:
        ParameterError: If ratio * n is not within 1e-9 of an integer
    """
    value = ratio * n
    nearest = round(value)
    if abs(value - nearest) > INTEGRALITY_TOL:
        raise ParameterError(f"{name} = {ratio} * {n} = {value:g} is not an integer")
    return int(nearest)


@dataclass(frozen=True)
class RatioTriple:
    """Fixed ratios (k/n, r/n, m/n) followed along growing n."""

    gamma: float
    eta: float
    h: float

    def __post_init__(self) -> None:
        for name in ("gamma", "eta", "h"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise ParameterError(f"ratio {name} must lie in (0, 1), got {value}")

    def __str__(self) -> str:
        return f"(k/n={self.gamma}, r/n={self.eta}, m/n={self.h})"

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.gamma, self.eta, self.h)

    def params_at(self, n: int) -> ChainParams:
        """The chain with n balls at these ratios.

        Raises:
            ParameterError: If a count is not integral or the chain is invalid
        """
        return ChainParams(
            n=n,
            m=integral_count(self.h, n, "m"),
            r=integral_count(self.eta, n, "r"),
            k=integral_count(self.gamma, n, "k"),
        )

    def admits(self, n: int) -> bool:
        try:
            self.params_at(n)
        except ParameterError:
            return False
        return True


def classify_ratios(ratios: RatioTriple,
                    tolerance: float = DEFAULT_NEAR_CRITICAL_TOL) -> Regime:
    """Asymptotic regime of a ratio triple.

    Non-mixing iff k/n = m/n = 1/2; critical when the limiting lambda1 is
    within ``tolerance`` of zero; generic otherwise.
    """
    if ratios.gamma == 0.5 and ratios.h == 0.5:
        return Regime.NON_MIXING
    if abs(limiting_lambda1(ratios.gamma, ratios.h)) <= tolerance:
        return Regime.CRITICAL
    return Regime.GENERIC


class SweepAxis(Enum):
    """Which ratio a sweep varies."""

    K = "k"
    R = "r"
    M = "m"


@dataclass(frozen=True)
class SweepGrid:
    """A rectangle of (ratio, n) cells along one varying axis.

    The fixed ratios not on the axis come from ``gamma`` / ``eta`` / ``h``;
    ``h=None`` couples the left-urn size to the red count (m = r).
    """

    axis: SweepAxis
    ratios: tuple[float, ...]
    ns: tuple[int, ...]
    epsilon: float = 0.01
    gamma: float = 0.02
    eta: float = 0.5
    h: Optional[float] = None
    name: str = "custom"

    def __post_init__(self) -> None:
        if not self.ratios or not self.ns:
            raise ParameterError("a sweep grid needs at least one ratio and one n")
        if not 0 < self.epsilon < 1:
            raise ParameterError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if any(n < 2 for n in self.ns):
            raise ParameterError("every n must be at least 2")

    def triple(self, ratio: float) -> RatioTriple:
        gamma, eta, h = self.gamma, self.eta, self.h
        if self.axis is SweepAxis.K:
            gamma = ratio
        elif self.axis is SweepAxis.R:
            eta = ratio
        else:
            h = ratio
        return RatioTriple(gamma=gamma, eta=eta, h=eta if h is None else h)

    def cells(self) -> list[tuple[float, int]]:
        """Row-major (ratio, n) pairs; this order is the output order."""
        return [(ratio, n) for ratio in self.ratios for n in self.ns]

    def params_at(self, ratio: float, n: int) -> ChainParams:
        return self.triple(ratio).params_at(n)


TABLE_PRESETS: dict[int, SweepGrid] = {
    1: SweepGrid(axis=SweepAxis.K, ratios=TABLE_RATIOS, ns=TABLE_NS, eta=0.5, name="table1"),
    2: SweepGrid(axis=SweepAxis.R, ratios=TABLE_RATIOS, ns=TABLE_NS, gamma=0.02, name="table2"),
    3: SweepGrid(axis=SweepAxis.M, ratios=TABLE_RATIOS, ns=TABLE_NS, gamma=0.02, eta=0.5, name="table3"),
}


@dataclass(frozen=True)
class FigurePreset:
    """t_mix against n along one ratio triple."""

    ratios: RatioTriple
    ns: tuple[int, ...]
    epsilon: float = 0.01
    name: str = "custom"


FIGURE_PRESETS: dict[int, FigurePreset] = {
    1: FigurePreset(RatioTriple(0.05, 0.40, 0.40), tuple(range(20, 1001, 20)), name="figure1"),
    2: FigurePreset(RatioTriple(0.10, 0.40, 0.40), tuple(range(20, 1001, 20)), name="figure2"),
    3: FigurePreset(RatioTriple(0.25, 0.50, 0.50), tuple(range(52, 1001, 4)), name="figure3"),
}


def parse_axis(value: str) -> SweepAxis:
    try:
        return SweepAxis(value.lower())
    except ValueError as e:
        raise ParameterError(f"unknown axis '{value}', expected one of k, r, m") from e
