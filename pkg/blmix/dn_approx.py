"""
Discrete normal laws and the local-limit comparison with hypergeometrics.

dN(zeta, xi) on {0, ..., k} puts mass proportional to phi((j - zeta) / xi)
on j, where phi is the standard normal density.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy.stats import norm

from .backends import FloatBackend
from .chain import ChainParams
from .contracts import LLTDecayReport, LLTDecayRow, NormalizerReport, NormalizerRow
from .errors import ParameterError
from .logging_config import get_logger
from .mixing.grids import RatioTriple

logger = get_logger(__name__)

_FLOAT = FloatBackend()


@dataclass(frozen=True)
class DiscreteNormal:
    """Normal density with location zeta and scale xi, sampled on {0, ..., k}."""

    zeta: float
    xi: float
    k: int

    def __post_init__(self) -> None:
        if not self.xi > 0:
            raise ParameterError(f"scale xi must be positive, got {self.xi}")
        if self.k < 0:
            raise ParameterError(f"support size k must be nonnegative, got {self.k}")

    @cached_property
    def densities(self) -> np.ndarray:
        """phi((j - zeta) / xi) / xi for j = 0..k."""
        j = np.arange(self.k + 1)
        return norm.pdf((j - self.zeta) / self.xi) / self.xi

    @cached_property
    def normalizer(self) -> float:
        # smallest terms first
        return math.fsum(np.sort(self.densities).tolist())

    @cached_property
    def pmf_vector(self) -> np.ndarray:
        return self.densities / self.normalizer

    def pmf(self, j: int) -> float:
        if not 0 <= j <= self.k:
            return 0.0
        return float(self.pmf_vector[j])


def dn_pmf(dn: DiscreteNormal, j: int) -> float:
    """phi((j - zeta) / xi) / (xi N); 0 outside {0, ..., k}."""
    return dn.pmf(j)


def center_count(params: ChainParams) -> int:
    """rm/n rounded half up."""
    return math.floor(Fraction(params.r * params.m, params.n) + Fraction(1, 2))


@dataclass(frozen=True)
class LLTParams:
    """Location and scale of the discrete normal matched to Hyp(m, l, k)."""

    params: ChainParams
    l: int

    def __post_init__(self) -> None:
        top = min(self.params.m, self.params.r)
        if not 0 <= self.l <= top:
            raise ParameterError(f"need 0 <= l <= min(m, r) = {top}, got l={self.l}",
                                 context=str(self.params))

    @classmethod
    def centered(cls, params: ChainParams) -> LLTParams:
        return cls(params=params, l=center_count(params))

    @property
    def p(self) -> float:
        return self.l / self.params.m

    @property
    def q(self) -> float:
        return 1 - self.p

    @property
    def sigma(self) -> float:
        """max(1, sqrt(k p q (1 - k/n)))."""
        k, n = self.params.k, self.params.n
        return max(1.0, math.sqrt(k * self.p * self.q * (1 - k / n)))

    @property
    def zeta(self) -> float:
        return self.params.k * self.p

    def discrete_normal(self) -> DiscreteNormal:
        return DiscreteNormal(zeta=self.zeta, xi=self.sigma, k=self.params.k)


def llt_tv(params: ChainParams, l: int) -> float:
    """||Hyp(m, l, k) - dN(kp, sigma)||_TV over {0, ..., k}."""
    llt = LLTParams(params, l)
    hyp = _FLOAT.hypergeom_vector(params.m, l, params.k)
    return float(_FLOAT.half_l1(hyp, llt.discrete_normal().pmf_vector))


def normalizer_check(params_sequence: Iterable[ChainParams], bound: float = 5.0) -> NormalizerReport:
    """sqrt(n) |N - 1| at the centered count l = round(rm/n)."""
    rows = []
    for params in params_sequence:
        dn = LLTParams.centered(params).discrete_normal()
        rows.append(NormalizerRow(
            n=params.n,
            normalizer=dn.normalizer,
            scaled_error=math.sqrt(params.n) * abs(dn.normalizer - 1),
        ))
    worst = max((r.scaled_error for r in rows), default=0.0)
    return NormalizerReport(rows=rows, bound=bound, max_scaled_error=worst, passed=worst <= bound)


def llt_decay_check(ratios: RatioTriple, ns: Iterable[int]) -> LLTDecayReport:
    """sqrt(n) llt_tv at l = round(rm/n); passes when the last value is at most twice the median."""
    rows = []
    for n in ns:
        params = ratios.params_at(n)
        l = center_count(params)
        tv = llt_tv(params, l)
        rows.append(LLTDecayRow(n=n, l=l, tv=tv, scaled=math.sqrt(n) * tv))
        logger.debug("llt n=%d l=%d tv=%.3g", n, l, tv)
    return LLTDecayReport.from_rows(ratios.as_tuple(), rows)
