"""Tests for discrete normal laws and the hypergeometric local-limit comparison."""
import math

import pytest
from scipy.stats import norm

from blmix.chain import ChainParams
from blmix.dn_approx import (
    DiscreteNormal,
    LLTParams,
    center_count,
    dn_pmf,
    llt_decay_check,
    llt_tv,
    normalizer_check,
)
from blmix.errors import ParameterError
from blmix.mixing import RatioTriple

LLT_NS = range(100, 2001, 100)


class TestDiscreteNormal:
    def test_density_ratio(self):
        dn = DiscreteNormal(zeta=10, xi=2, k=20)
        assert dn_pmf(dn, 10) / dn_pmf(dn, 12) == pytest.approx(math.exp(0.5))

    def test_symmetric_location(self):
        dn = DiscreteNormal(zeta=7.5, xi=3, k=15)
        for j in range(16):
            assert dn_pmf(dn, j) == pytest.approx(dn_pmf(dn, 15 - j), rel=1e-14)

    def test_sums_to_one(self):
        dn = DiscreteNormal(zeta=3.3, xi=1.7, k=12)
        assert math.fsum(dn_pmf(dn, j) for j in range(13)) == pytest.approx(1.0, abs=1e-14)

    def test_outside_support_is_zero(self):
        dn = DiscreteNormal(zeta=1, xi=1, k=4)
        assert dn_pmf(dn, -1) == 0.0
        assert dn_pmf(dn, 5) == 0.0

    def test_flat_limit_normalizer(self):
        dn = DiscreteNormal(zeta=10, xi=1e6, k=20)
        assert dn.normalizer == pytest.approx(21 * norm.pdf(0) / 1e6, rel=1e-9)

    def test_invalid_scale(self):
        with pytest.raises(ParameterError):
            DiscreteNormal(zeta=0, xi=0, k=3)


class TestLLTParams:
    def test_center_count_rounds_half_up(self):
        assert center_count(ChainParams(n=100, m=50, r=50, k=5)) == 25
        assert center_count(ChainParams(n=10, m=3, r=5, k=1)) == 2

    def test_sigma_clamp(self):
        llt = LLTParams.centered(ChainParams(n=100, m=50, r=50, k=1))
        assert llt.p == 0.5
        assert llt.sigma == 1.0

    def test_sigma_formula(self):
        llt = LLTParams(ChainParams(n=1000, m=500, r=500, k=20), 250)
        assert llt.zeta == 10
        assert llt.sigma == pytest.approx(math.sqrt(20 * 0.25 * 0.98))

    def test_l_range(self):
        with pytest.raises(ParameterError):
            LLTParams(ChainParams(n=100, m=50, r=30, k=5), 31)


class TestLocalLimit:
    def test_degenerate_start(self):
        params = ChainParams(n=100, m=50, r=50, k=5)
        dn = LLTParams(params, 0).discrete_normal()
        assert llt_tv(params, 0) == pytest.approx(1 - dn_pmf(dn, 0))

    def test_metric_range(self):
        params = ChainParams(n=1000, m=500, r=500, k=20)
        for l in (0, 100, 250, 500):
            assert 0 <= llt_tv(params, l) <= 1

    def test_reflection(self):
        params = ChainParams(n=100, m=50, r=50, k=5)
        assert llt_tv(params, 20) == pytest.approx(llt_tv(params, 30), abs=1e-12)

    def test_small_n_is_finite(self):
        value = llt_decay_check(RatioTriple(0.02, 0.5, 0.5), [100]).rows[0].scaled
        assert 0 < value < math.inf

    @pytest.mark.parametrize('ratios', [RatioTriple(0.02, 0.5, 0.5), RatioTriple(0.10, 0.4, 0.4)])
    def test_decay_bounded(self, ratios):
        report = llt_decay_check(ratios, LLT_NS)
        assert len(report.rows) == 20
        assert report.passed
        assert report.last_scaled <= 2 * report.median_scaled

    @pytest.mark.parametrize('ratios', [RatioTriple(0.02, 0.5, 0.5), RatioTriple(0.10, 0.4, 0.4)])
    def test_normalizer_bounded(self, ratios):
        report = normalizer_check(ratios.params_at(n) for n in LLT_NS)
        assert report.passed
        assert report.max_scaled_error <= 5
