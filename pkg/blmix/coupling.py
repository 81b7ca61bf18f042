"""
Shared-label coupling of two Bernoulli-Laplace chains.

Both chains label the slots of each urn with red balls on the lowest
labels, then swap the same k labels from each urn. With x >= y red balls
on the left, the left draw splits into the labels red in both chains
(a0), red in the first only (a1), and the right draw likewise (b0, b1):

    a0 ~ Hyp(m, y, k)            a1 ~ Hyp(m - y, x - y, k - a0)
    b0 ~ Hyp(n - m, r - x, k)    b1 ~ Hyp(n - m - (r - x), x - y, k - b0)

    X' = x - a0 - a1 + b0,  Y' = y - a0 + b0 + b1,  X' - Y' = (x - y) - a1 - b1

Simulation works on these counts, never on ball arrays.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np
from scipy.stats import chisquare

from .backends import ArithmeticBackend, resolve_backend
from .chain import ChainParams, TransitionKernel, transition_row
from .contracts import ContractionEstimate, TauReport
from .errors import ParameterError, RegimeError, StateError
from .logging_config import get_logger
from .mixing.grids import RatioTriple
from .spectral import q_n, t_n

logger = get_logger(__name__)

#: Trials per RNG block; block b draws from default_rng([seed, b]).
BLOCK_SIZE = 8192
DEFAULT_SEED = 42
#: Constant C in the hitting-time tail check P(tau > horizon) <= C / kappa^2.
TAIL_CONSTANT = 5.0


@dataclass(frozen=True)
class CoupledState:
    """Red counts in the left urn of two coupled chains."""

    params: ChainParams
    x_count: int
    y_count: int

    def __post_init__(self) -> None:
        space = self.params.state_space
        for value in (self.x_count, self.y_count):
            if value not in space:
                raise StateError(f"state {value} outside [{space.lo}, {space.hi}]",
                                 context=str(self.params))

    @property
    def distance(self) -> int:
        return abs(self.x_count - self.y_count)

    @property
    def coalesced(self) -> bool:
        return self.x_count == self.y_count


@dataclass(frozen=True)
class KappaSets:
    """The central band I_n(kappa) and the close-pair set F_n(kappa)."""

    params: ChainParams
    kappa: int

    def __post_init__(self) -> None:
        if self.kappa < 1:
            raise ParameterError(f"kappa must be at least 1, got {self.kappa}")

    @property
    def band_radius(self) -> float:
        return self.kappa * math.sqrt(self.params.n)

    @property
    def pair_radius(self) -> float:
        return math.sqrt(self.params.n) / self.kappa ** 3

    def in_band(self, x: Any) -> Any:
        """|x - rm/n| <= kappa sqrt(n); works elementwise on arrays."""
        return np.abs(np.asarray(x) - self.params.stationary_mean) <= self.band_radius

    def in_close_pairs(self, x: Any, y: Any) -> Any:
        x, y = np.asarray(x), np.asarray(y)
        return self.in_band(x) & self.in_band(y) & (np.abs(x - y) <= self.pair_radius)

    def close_pairs(self) -> list[tuple[int, int]]:
        states = list(self.params.state_space.states())
        return [(x, y) for x in states for y in states if self.in_close_pairs(x, y)]


def contraction_coefficient(params: ChainParams) -> Fraction:
    """1 - k(n - 2k) / (m(n - m)), the expected distance factor for adjacent states."""
    n, m, k = params.n, params.m, params.k
    return 1 - Fraction(k * (n - 2 * k), m * (n - m))


def adjacent_difference_law(params: ChainParams) -> dict[int, Fraction]:
    """Closed-form law of X' - Y' when x - y = 1."""
    n, m, k = params.n, params.m, params.k
    down = Fraction(k * k, m * (n - m))
    up = Fraction((m - k) * (n - m - k), m * (n - m))
    return {-1: down, 0: 1 - down - up, 1: up}


# ── Sampling ─────────────────────────────────────────────────────────

def _step_arrays(params: ChainParams, x: np.ndarray, y: np.ndarray,
                 rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    n, m, r, k = params.n, params.m, params.r, params.k
    hi = np.maximum(x, y)
    lo = np.minimum(x, y)
    gap = hi - lo
    a0 = rng.hypergeometric(lo, m - lo, k)
    a1 = rng.hypergeometric(gap, m - hi, k - a0)
    b0 = rng.hypergeometric(r - hi, n - m - r + hi, k)
    b1 = rng.hypergeometric(gap, n - m - r + lo, k - b0)
    new_hi = hi - a0 - a1 + b0
    new_lo = lo - a0 + b0 + b1
    swapped = x < y
    return np.where(swapped, new_lo, new_hi), np.where(swapped, new_hi, new_lo)


def coupled_step(state: CoupledState, rng: np.random.Generator) -> CoupledState:
    """One shared-label swap of both chains."""
    x, y = _step_arrays(state.params, np.array([state.x_count]), np.array([state.y_count]), rng)
    return CoupledState(params=state.params, x_count=int(x[0]), y_count=int(y[0]))


def _block_sizes(trials: int) -> list[int]:
    full, rest = divmod(trials, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def _run_blocks(fn, trials: int, seed: int, threads: int) -> list[Any]:
    sizes = _block_sizes(trials)
    jobs = [(size, np.random.default_rng([seed, b])) for b, size in enumerate(sizes)]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return list(pool.map(lambda job: fn(*job), jobs))


def _check_states(params: ChainParams, *states: int) -> None:
    for s in states:
        params.state_space.index(s)


def simulate_pairs(params: ChainParams, x: int, y: int, t: int, trials: int,
                   seed: int = DEFAULT_SEED, threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """(X_t, Y_t) for ``trials`` independent coupled runs from (x, y)."""
    _check_states(params, x, y)
    if trials < 1:
        raise ParameterError(f"trials must be at least 1, got {trials}")
    if t < 0:
        raise ParameterError(f"t must be nonnegative, got {t}")

    def block(size: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        xs = np.full(size, x, dtype=np.int64)
        ys = np.full(size, y, dtype=np.int64)
        for _ in range(t):
            xs, ys = _step_arrays(params, xs, ys, rng)
        return xs, ys

    parts = _run_blocks(block, trials, seed, threads)
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def contraction_estimate(params: ChainParams, x: int, y: int, t: int = 1,
                         trials: int = 100_000, seed: int = DEFAULT_SEED,
                         threads: int = 1) -> ContractionEstimate:
    """Monte-Carlo E|X_t - Y_t| next to |x - y| c^t."""
    xs, ys = simulate_pairs(params, x, y, t, trials, seed, threads)
    dist = np.abs(xs - ys).astype(np.float64)
    stderr = float(dist.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    bound = abs(x - y) * float(contraction_coefficient(params)) ** t
    estimate = ContractionEstimate(
        params=params.as_dict(), x=x, y=y, t=t, trials=trials, seed=seed,
        mean=float(dist.mean()), stderr=stderr, bound=bound,
    )
    logger.debug("contraction %s", estimate)
    return estimate


def marginal_fit(params: ChainParams, x: int, y: int, trials: int = 100_000,
                 seed: int = DEFAULT_SEED) -> tuple[float, float]:
    """Chi-square p-values of each coordinate's one-step law against its exact row."""
    xs, ys = simulate_pairs(params, x, y, 1, trials, seed)
    pvalues = []
    for start, sample in ((x, xs), (y, ys)):
        row = transition_row(params, start, "float")
        support = [s for s, w in row.items() if w > 0]
        counts = Counter(sample.tolist())
        observed = np.array([counts.get(s, 0) for s in support], dtype=np.float64)
        expected = np.array([row[s] for s in support]) * trials
        if len(support) == 1:
            pvalues.append(1.0 if observed[0] == trials else 0.0)
            continue
        pvalues.append(float(chisquare(observed, expected * observed.sum() / expected.sum()).pvalue))
    return pvalues[0], pvalues[1]


def _horizon(params: ChainParams, kappa: int) -> float:
    try:
        return t_n(params) + kappa
    except RegimeError:
        return q_n(params) + kappa


def kappa_admissible(params: ChainParams, kappa: int) -> bool:
    """Whether kappa^4 c^kappa <= 1 / kappa^2 for the contraction coefficient c of params."""
    c = float(contraction_coefficient(params))
    return 6 * math.log(kappa) + kappa * math.log(c) <= 0


def tau_hitting_time(params: ChainParams, x: int, y: int, kappa: int,
                     trials: int = 10_000, cap: int = 10_000,
                     seed: int = DEFAULT_SEED, threads: int = 1) -> TauReport:
    """Empirical law of the first time (X_t, Y_t) lies in F_n(kappa).

    Trials still outside at ``cap`` are censored and counted in the tail
    P(tau > horizon), horizon = t_n + kappa (q_n + kappa when t_n is undefined).
    The tail is compared with TAIL_CONSTANT / kappa^2; that order only holds
    for kappa meeting the admissibility condition, which the report records.
    """
    _check_states(params, x, y)
    sets = KappaSets(params, kappa)
    horizon = _horizon(params, kappa)

    def block(size: int, rng: np.random.Generator) -> np.ndarray:
        xs = np.full(size, x, dtype=np.int64)
        ys = np.full(size, y, dtype=np.int64)
        tau = np.full(size, -1, dtype=np.int64)
        tau[sets.in_close_pairs(xs, ys)] = 0
        for step in range(1, cap + 1):
            active = tau < 0
            if not active.any():
                break
            nx, ny = _step_arrays(params, xs[active], ys[active], rng)
            xs[active], ys[active] = nx, ny
            hit = active.copy()
            hit[active] = sets.in_close_pairs(nx, ny)
            tau[hit] = step
        return tau

    tau = np.concatenate(_run_blocks(block, trials, seed, threads))
    censored = tau < 0
    tail = float(np.mean(censored | (tau > horizon)))
    finished = tau[~censored]
    report = TauReport(
        params=params.as_dict(), x=x, y=y, kappa=kappa, trials=trials, seed=seed,
        horizon=horizon, tail_probability=tail, censored=int(censored.sum()),
        tail_bound=TAIL_CONSTANT / kappa ** 2, kappa_admissible=kappa_admissible(params, kappa),
        median_tau=float(np.median(finished)) if finished.size else None,
        counts={int(k): int(v) for k, v in sorted(Counter(finished.tolist()).items())},
    )
    logger.info("tau(%d, %d, kappa=%d): tail=%.4f censored=%d", x, y, kappa, tail, report.censored)
    return report


# ── Exact laws ───────────────────────────────────────────────────────

def coupled_step_law(params: ChainParams, x: int, y: int,
                     backend: str | ArithmeticBackend | None = "rational") -> dict[tuple[int, int], Any]:
    """Exact one-step joint law of (X', Y') by enumerating (a0, a1, b0, b1)."""
    _check_states(params, x, y)
    arith = resolve_backend(backend)
    n, m, r, k = params.n, params.m, params.r, params.k
    hi, lo = max(x, y), min(x, y)
    gap = hi - lo
    law: dict[tuple[int, int], Any] = {}
    a0_law = arith.hypergeom_vector(m, lo, k)
    b0_law = arith.hypergeom_vector(n - m, r - hi, k)
    for a0, pa0 in enumerate(a0_law):
        if not pa0:
            continue
        a1_law = arith.hypergeom_vector(m - lo, gap, k - a0)
        for a1, pa1 in enumerate(a1_law):
            if not pa1:
                continue
            for b0, pb0 in enumerate(b0_law):
                if not pb0:
                    continue
                b1_law = arith.hypergeom_vector(n - m - r + hi, gap, k - b0)
                for b1, pb1 in enumerate(b1_law):
                    if not pb1:
                        continue
                    new_hi = hi - a0 - a1 + b0
                    new_lo = lo - a0 + b0 + b1
                    key = (new_hi, new_lo) if x >= y else (new_lo, new_hi)
                    law[key] = law.get(key, arith.from_exact(0)) + pa0 * pa1 * pb0 * pb1
    return law


def difference_law(law: dict[tuple[int, int], Any]) -> dict[int, Any]:
    """Law of X' - Y' from a joint law."""
    out: dict[int, Any] = {}
    for (x, y), p in law.items():
        out[x - y] = out.get(x - y, 0) + p
    return out


def marginal_laws(law: dict[tuple[int, int], Any]) -> tuple[dict[int, Any], dict[int, Any]]:
    first: dict[int, Any] = {}
    second: dict[int, Any] = {}
    for (x, y), p in law.items():
        first[x] = first.get(x, 0) + p
        second[y] = second.get(y, 0) + p
    return first, second


def close_pair_tv(kernel: TransitionKernel, kappa: int) -> Any:
    """max over distinct (x, y) in F_n(kappa) of ||P(x, .) - P(y, .)||_TV; 0 if none."""
    sets = KappaSets(kernel.params, kappa)
    backend = kernel.backend
    worst = backend.from_exact(0)
    lo = kernel.support.lo
    for x, y in sets.close_pairs():
        if x == y:
            continue
        worst = max(worst, backend.half_l1(kernel.matrix[x - lo], kernel.matrix[y - lo]))
    return worst if backend.exact else float(worst)


def smallest_kappa(ratios: RatioTriple, start: int = 2, limit: int = 1_000_000) -> int:
    """Smallest kappa >= start with kappa^4 c^kappa <= 1 / kappa^2.

    c = 1 - gamma(1 - 2 gamma) / (h(1 - h)); kappa = 1 satisfies the
    inequality for every c <= 1, so the scan starts at 2.
    """
    c = 1 - ratios.gamma * (1 - 2 * ratios.gamma) / (ratios.h * (1 - ratios.h))
    if abs(c) >= 1:
        raise ParameterError(f"no admissible kappa: |c| = {abs(c):.4g} >= 1", context=str(ratios))
    if c == 0:
        return start
    log_c = math.log(abs(c))
    for kappa in range(start, limit + 1):
        if 6 * math.log(kappa) + kappa * log_c <= 0:
            return kappa
    raise ParameterError(f"no kappa below {limit}", context=str(ratios))
