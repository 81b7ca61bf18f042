"""Chain parameters, state spaces and the two relabeling symmetries."""
from __future__ import annotations

from dataclasses import dataclass, replace
from numbers import Integral

from ..errors import ParameterError, StateError


@dataclass(frozen=True)
class StateSpace:
    """Contiguous integer state space {lo, ..., hi}."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ParameterError(f"empty state space [{self.lo}, {self.hi}]")

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def states(self) -> range:
        return range(self.lo, self.hi + 1)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, Integral) and not isinstance(x, bool) and self.lo <= x <= self.hi

    def index(self, x: int) -> int:
        """Row/column index of state x."""
        if x not in self:
            raise StateError(f"state {x} outside [{self.lo}, {self.hi}]")
        return int(x) - self.lo


@dataclass(frozen=True)
class ChainParams:
    """The integer quadruple (n, m, r, k) defining one Bernoulli-Laplace chain.

    n balls in total, m of them in the left urn, r of them red, and k balls
    swapped between the urns at every step.
    """

    n: int
    m: int
    r: int
    k: int

    def __post_init__(self) -> None:
        for name in ("n", "m", "r", "k"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, Integral):
                raise ParameterError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        n, m, r, k = self.n, self.m, self.r, self.k
        if not 1 <= m <= n - 1:
            raise ParameterError(f"need 1 <= m <= n-1, got m={m}, n={n}")
        if not 0 <= r <= n:
            raise ParameterError(f"need 0 <= r <= n, got r={r}, n={n}")
        if not 1 <= k <= min(m, n - m):
            raise ParameterError(f"need 1 <= k <= min(m, n-m) = {min(m, n - m)}, got k={k}")

    @property
    def state_space(self) -> StateSpace:
        return StateSpace(lo=max(0, self.r + self.m - self.n), hi=min(self.m, self.r))

    @property
    def is_canonical(self) -> bool:
        return 2 * self.r <= self.n and 2 * self.m <= self.n

    @property
    def is_full_swap(self) -> bool:
        """k = m = n - m: every ball changes urn, the chain is periodic."""
        return self.k == self.m and 2 * self.m == self.n

    @property
    def stationary_mean(self) -> float:
        return self.r * self.m / self.n

    def canonical(self) -> Canonicalization:
        """Map to the equivalent chain with r, m <= n/2."""
        return Canonicalization.of(self)

    def as_dict(self) -> dict[str, int]:
        return {"n": self.n, "m": self.m, "r": self.r, "k": self.k}


@dataclass(frozen=True)
class Canonicalization:
    """Relabeling from raw parameters to canonical form.

    Color swap (r > n/2): red and white trade places, state x -> m - x.
    Urn swap (m > n/2): left and right trade places, state x -> r - x,
    applied after the color swap.
    """

    raw: ChainParams
    params: ChainParams
    color_swapped: bool
    urn_swapped: bool

    @classmethod
    def of(cls, raw: ChainParams) -> Canonicalization:
        current = raw
        color_swapped = 2 * current.r > current.n
        if color_swapped:
            current = replace(current, r=current.n - current.r)
        urn_swapped = 2 * current.m > current.n
        if urn_swapped:
            current = replace(current, m=current.n - current.m)
        return cls(raw=raw, params=current, color_swapped=color_swapped, urn_swapped=urn_swapped)

    def to_canonical(self, x: int) -> int:
        """Translate a raw state into the canonical chain's state."""
        self.raw.state_space.index(x)
        if self.color_swapped:
            x = self.raw.m - x
        if self.urn_swapped:
            x = self.params.r - x
        return x

    def from_canonical(self, y: int) -> int:
        """Translate a canonical state back into the raw chain's state."""
        self.params.state_space.index(y)
        if self.urn_swapped:
            y = self.params.r - y
        if self.color_swapped:
            y = self.raw.m - y
        return y
