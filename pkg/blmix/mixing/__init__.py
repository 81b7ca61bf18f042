"""
Mixing times: distances, worst-case curves, sweep grids and diagnostics.
"""
from .curve import (
    DEFAULT_EPSILON,
    CurveStatus,
    MixingCurve,
    default_cap,
    evolve,
    stationary_residual,
    tv_distance,
    tv_profile,
    worst_case_curve,
)
from .diagnostics import bounded_regime_check, critical_lower_bound, cutoff_diagnostics
from .grids import (
    FIGURE_PRESETS,
    TABLE_PRESETS,
    FigurePreset,
    RatioTriple,
    SweepAxis,
    SweepGrid,
    classify_ratios,
    integral_count,
    parse_axis,
)
from .engine import SweepTable, run_cell, sweep

__all__ = [
    'DEFAULT_EPSILON',
    'FIGURE_PRESETS',
    'TABLE_PRESETS',
    'CurveStatus',
    'FigurePreset',
    'MixingCurve',
    'RatioTriple',
    'SweepAxis',
    'SweepGrid',
    'SweepTable',
    'bounded_regime_check',
    'classify_ratios',
    'critical_lower_bound',
    'cutoff_diagnostics',
    'default_cap',
    'evolve',
    'integral_count',
    'parse_axis',
    'run_cell',
    'stationary_residual',
    'sweep',
    'tv_distance',
    'tv_profile',
    'worst_case_curve',
]
