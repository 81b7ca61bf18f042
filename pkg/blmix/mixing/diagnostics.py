"""Cutoff and bounded-regime diagnostics along fixed-ratio sequences."""
from __future__ import annotations

from typing import Any, Iterable

from ..backends import ArithmeticBackend, resolve_backend
from ..chain import ChainParams, build_kernel, stationary_pmf, transition_row
from ..contracts import BoundedRegimeReport, BoundedRow, CutoffReport, CutoffRow
from ..errors import CriticalRegimeError, NonMixingError, RegimeError, UnsupportedSizeError
from ..logging_config import get_logger
from ..spectral import Regime, limiting_t_n, q_n, t_n
from .curve import DEFAULT_EPSILON, tv_distance, worst_case_curve
from .grids import DEFAULT_NEAR_CRITICAL_TOL, RatioTriple, classify_ratios

logger = get_logger(__name__)


def _require_regime(ratios: RatioTriple, wanted: Regime, tolerance: float) -> None:
    regime = classify_ratios(ratios, tolerance)
    if regime is wanted:
        return
    if regime is Regime.NON_MIXING:
        raise NonMixingError("k/n = m/n = 1/2 never mixes", context=str(ratios))
    if regime is Regime.CRITICAL:
        raise CriticalRegimeError(
            "critical ratios have no cutoff at t_n; use bounded_regime_check", context=str(ratios))
    raise RegimeError("generic ratios mix in order log n; use cutoff_diagnostics",
                      context=str(ratios))


def critical_lower_bound(params: ChainParams,
                         backend: str | ArithmeticBackend | None = None) -> Any:
    """Exact distance after one step from the lowest state, a lower bound on d(1).

    With m = r = n/2 the lowest state moves to k deterministically and the
    bound is 1 - pi(k). A value above epsilon certifies t_mix >= 2.
    """
    arith = resolve_backend(backend)
    row = transition_row(params, params.state_space.lo, arith)
    return tv_distance(row, stationary_pmf(params, arith))


def cutoff_diagnostics(ratios: RatioTriple, ns: Iterable[int],
                       epsilon: float = DEFAULT_EPSILON,
                       backend: str | ArithmeticBackend | None = None,
                       tolerance: float = DEFAULT_NEAR_CRITICAL_TOL) -> CutoffReport:
    """t_mix(eps) - t_n and t_mix(eps) / t_mix(1 - eps) per n.

    Raises:
        RegimeError: If the ratios are not generic
    """
    _require_regime(ratios, Regime.GENERIC, tolerance)
    arith = resolve_backend(backend)
    rows = []
    for n in ns:
        params = ratios.params_at(n)
        kernel = build_kernel(params, arith)
        early = worst_case_curve(kernel, epsilon).require_mixed()
        late = worst_case_curve(kernel, 1 - epsilon).require_mixed()
        tn = t_n(params)
        rows.append(CutoffRow(
            n=n,
            t_mix=early,
            t_mix_complement=late,
            t_n=tn,
            limiting_t_n=limiting_t_n(ratios, n),
            difference=early - tn,
            window=early - late,
            ratio=early / max(late, 1),
        ))
        logger.debug("cutoff row %s", rows[-1])

    report = CutoffReport(ratios=ratios.as_tuple(), epsilon=epsilon, rows=rows)
    if rows:
        diffs = [r.difference for r in rows]
        report.difference_range = max(diffs) - min(diffs)
        report.ratio_trend_down = rows[-1].ratio <= rows[0].ratio
    return report


def bounded_regime_check(ratios: RatioTriple, ns: Iterable[int],
                         epsilon: float = DEFAULT_EPSILON,
                         backend: str | ArithmeticBackend | None = None,
                         tolerance: float = DEFAULT_NEAR_CRITICAL_TOL) -> BoundedRegimeReport:
    """t_mix, q_n and the one-step lower bound per n for critical ratios.

    Raises:
        RegimeError: If the ratios are not (near-)critical
    """
    _require_regime(ratios, Regime.CRITICAL, tolerance)
    arith = resolve_backend(backend)
    rows = []
    for n in ns:
        params = ratios.params_at(n)
        kernel = build_kernel(params, arith)
        try:
            qn = q_n(params)
        except UnsupportedSizeError:
            qn = None
        rows.append(BoundedRow(
            n=n,
            t_mix=worst_case_curve(kernel, epsilon).require_mixed(),
            q_n=qn,
            one_step_lower_bound=float(critical_lower_bound(params, arith)),
        ))

    report = BoundedRegimeReport(ratios=ratios.as_tuple(), epsilon=epsilon, rows=rows)
    if rows:
        report.min_t_mix = min(r.t_mix for r in rows)
        report.max_t_mix = max(r.t_mix for r in rows)
    return report
