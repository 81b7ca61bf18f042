"""Report contracts: Pydantic models for every JSON document blmix emits."""

from statistics import median
from typing import Optional

from pydantic import BaseModel, Field


class MixResult(BaseModel):
    """Single-instance mixing result as printed by ``blmix mix``."""

    params: dict[str, int]
    epsilon: float
    t_mix: Optional[int] = None
    non_mixing: bool = False
    t_n: Optional[float] = None
    q_n: Optional[float] = None
    lambda1: float
    lambda2: Optional[float] = None
    regime: str
    backend: str
    approximate: bool = False


class SweepCell(BaseModel):
    """One cell of a sweep grid. ``status`` is ok | inf | err | skipped."""

    ratio: float
    n: int
    status: str = "pending"
    t_mix: Optional[int] = None
    error: str = ""

    @property
    def token(self) -> str:
        if self.status == "ok":
            return str(self.t_mix)
        if self.status == "inf":
            return "inf"
        return "ERR"


class LemmaRow(BaseModel):
    n: int
    gap: Optional[float] = None
    gap_nonnegative: Optional[bool] = None
    scaled_gap: Optional[float] = None
    scaled_power: Optional[float] = None
    notice: str = ""


class LemmaReport(BaseModel):
    """Per-n eigenvalue-gap scaling along a fixed-ratio sequence."""

    rows: list[LemmaRow] = Field(default_factory=list)
    bound: float
    all_nonnegative: bool
    max_scaled_gap: Optional[float] = None
    max_scaled_power: Optional[float] = None
    passed: bool

    @classmethod
    def from_rows(cls, rows: list[LemmaRow], bound: float) -> "LemmaReport":
        gaps = [r.scaled_gap for r in rows if r.scaled_gap is not None]
        powers = [r.scaled_power for r in rows if r.scaled_power is not None]
        nonneg = all(r.gap_nonnegative for r in rows if r.gap_nonnegative is not None)
        max_gap = max(gaps) if gaps else None
        max_power = max(powers) if powers else None
        passed = (nonneg
                  and (max_gap is None or max_gap <= bound)
                  and (max_power is None or max_power <= bound))
        return cls(rows=rows, bound=bound, all_nonnegative=nonneg,
                   max_scaled_gap=max_gap, max_scaled_power=max_power, passed=passed)


class CutoffRow(BaseModel):
    n: int
    t_mix: int
    t_mix_complement: int
    t_n: float
    limiting_t_n: float
    difference: float
    window: int
    ratio: float


class CutoffReport(BaseModel):
    """t_mix(eps) against t_n and the window t_mix(eps) - t_mix(1 - eps)."""

    ratios: tuple[float, float, float]
    epsilon: float
    rows: list[CutoffRow] = Field(default_factory=list)
    difference_range: float = 0.0
    ratio_trend_down: bool = True


class BoundedRow(BaseModel):
    n: int
    t_mix: int
    q_n: Optional[float] = None
    one_step_lower_bound: float


class BoundedRegimeReport(BaseModel):
    """Mixing times along a critical ratio sequence."""

    ratios: tuple[float, float, float]
    epsilon: float
    rows: list[BoundedRow] = Field(default_factory=list)
    min_t_mix: Optional[int] = None
    max_t_mix: Optional[int] = None


class ContractionEstimate(BaseModel):
    """Monte-Carlo E|X_t - Y_t| under the label coupling."""

    params: dict[str, int]
    x: int
    y: int
    t: int
    trials: int
    seed: int
    mean: float
    stderr: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return self.mean <= self.bound + 3 * self.stderr


class TauReport(BaseModel):
    """Empirical law of the hitting time of the close-pair set."""

    params: dict[str, int]
    x: int
    y: int
    kappa: int
    trials: int
    seed: int
    horizon: float
    tail_probability: float
    censored: int
    tail_bound: float
    kappa_admissible: bool
    median_tau: Optional[float] = None
    counts: dict[int, int] = Field(default_factory=dict)

    @property
    def within_bound(self) -> bool:
        return self.tail_probability <= self.tail_bound


class NormalizerRow(BaseModel):
    n: int
    normalizer: float
    scaled_error: float


class NormalizerReport(BaseModel):
    rows: list[NormalizerRow] = Field(default_factory=list)
    bound: float
    max_scaled_error: float
    passed: bool


class LLTDecayRow(BaseModel):
    n: int
    l: int
    tv: float
    scaled: float


class LLTDecayReport(BaseModel):
    """sqrt(n) * TV(hypergeometric, discrete normal) along growing n."""

    ratios: tuple[float, float, float]
    rows: list[LLTDecayRow] = Field(default_factory=list)
    median_scaled: float = 0.0
    last_scaled: float = 0.0
    passed: bool = True

    @classmethod
    def from_rows(cls, ratios: tuple[float, float, float], rows: list[LLTDecayRow]) -> "LLTDecayReport":
        if not rows:
            return cls(ratios=ratios, rows=rows)
        mid = median(r.scaled for r in rows)
        last = rows[-1].scaled
        return cls(ratios=ratios, rows=rows, median_scaled=mid,
                   last_scaled=last, passed=last <= 2 * mid)


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: dict = Field(default_factory=dict)


class SuiteResult(BaseModel):
    suite: str
    passed: bool
    checks: list[CheckResult] = Field(default_factory=list)


class VerifyReport(BaseModel):
    passed: bool
    seed: int
    suites: list[SuiteResult] = Field(default_factory=list)
