"""Tests for the closed-form spectral quantities."""
import math
from fractions import Fraction

import pytest

import blmix.spectral as spectral
from blmix.chain import ChainParams, build_kernel
from blmix.commands.verify import all_params, float_sample
from blmix.errors import CriticalRegimeError, NonMixingError, UnsupportedSizeError
from blmix.mixing import RatioTriple
from blmix.spectral import (
    Regime,
    b_coefficients,
    classify,
    eigen_data,
    eigen_magnitude,
    eigenfunctions,
    exact_eigen_residual,
    lambda1_exact,
    lambda2_exact,
    lemma_checks,
    limiting_t_n,
    q_n,
    s1_squared_decomposition_check,
    second_eigenpair_defined,
    t_n,
    verify_eigen_identity,
)

SMALL = ChainParams(n=4, m=2, r=2, k=1)
TABLE_CORNER = ChainParams(n=1000, m=500, r=500, k=20)


class TestEigenvalues:
    def test_lambda1(self):
        assert lambda1_exact(ChainParams(n=6, m=3, r=3, k=1)) == Fraction(1, 3)
        assert eigen_data(TABLE_CORNER).lambda1 == pytest.approx(0.92)

    def test_lambda2_needs_two_balls_per_urn(self):
        assert lambda2_exact(ChainParams(n=5, m=1, r=2, k=1)) is None
        assert eigen_data(ChainParams(n=5, m=1, r=2, k=1)).q_n is None

    def test_b_coefficients(self):
        assert b_coefficients(ChainParams(n=6, m=3, r=3, k=1)) == (
            Fraction(1, 5), Fraction(0), Fraction(4, 5))

    def test_eigen_data_rejects_tiny_chains(self):
        with pytest.raises(UnsupportedSizeError):
            eigen_data(ChainParams(n=2, m=1, r=1, k=1))

    def test_critical_instance(self):
        data = eigen_data(SMALL)
        assert data.lambda1 == 0
        assert data.regime is Regime.CRITICAL
        assert data.t_n is None
        assert data.q_n is not None

    def test_s2_undefined_for_single_red(self):
        assert eigenfunctions(ChainParams(n=8, m=4, r=1, k=2)).s2 is None


class TestPredictors:
    @pytest.mark.parametrize('params,expected', [
        (TABLE_CORNER, 41.42),
        (ChainParams(n=50, m=25, r=25, k=1), 23.46),
    ])
    def test_t_n(self, params, expected):
        assert t_n(params) == pytest.approx(expected, abs=0.01)

    def test_t_n_critical(self):
        with pytest.raises(CriticalRegimeError, match="q_n"):
            t_n(SMALL)

    def test_t_n_non_mixing(self):
        with pytest.raises(NonMixingError):
            t_n(ChainParams(n=100, m=50, r=50, k=50))

    def test_q_n_when_lambda2_vanishes(self):
        params = ChainParams(n=7, m=3, r=3, k=1)
        assert lambda2_exact(params) == 0
        assert q_n(params) == 1

    def test_q_n_formula(self):
        params = ChainParams(n=1000, m=500, r=500, k=250)
        lam2 = float(eigen_data(params).lambda2_exact)
        assert q_n(params) == pytest.approx(math.log(1000) / abs(math.log(abs(lam2))))

    def test_q_n_finite(self):
        value = q_n(ChainParams(n=100, m=50, r=50, k=25))
        assert 0 < value < math.inf

    def test_q_n_full_swap(self):
        assert q_n(ChainParams(n=100, m=50, r=50, k=50)) == math.inf

    def test_classify(self):
        assert classify(ChainParams(n=50, m=25, r=25, k=1)) is Regime.GENERIC
        assert classify(ChainParams(n=6, m=3, r=3, k=3)) is Regime.NON_MIXING
        # |lambda1| = 0.04 <= 1/sqrt(100)
        assert classify(ChainParams(n=100, m=50, r=50, k=24)) is Regime.CRITICAL
        assert classify(ChainParams(n=100, m=50, r=50, k=24), critical_constant=0.1) is Regime.GENERIC

    def test_limiting_t_n(self):
        ratios = RatioTriple(0.02, 0.5, 0.5)
        assert limiting_t_n(ratios, 1000) == pytest.approx(t_n(TABLE_CORNER))
        with pytest.raises(CriticalRegimeError):
            limiting_t_n(RatioTriple(0.25, 0.5, 0.5), 100)


class TestEigenIdentity:
    @pytest.mark.parametrize('which', [1, 2])
    def test_exact_in_rationals(self, which):
        assert verify_eigen_identity(build_kernel(SMALL, 'rational'), which) == 0

    @pytest.mark.parametrize('params,which', [
        (ChainParams(n=50, m=25, r=25, k=5), 2),
        (ChainParams(n=200, m=80, r=90, k=10), 1),
        (ChainParams(n=200, m=80, r=90, k=10), 2),
    ])
    def test_float_residual(self, params, which):
        assert verify_eigen_identity(build_kernel(params), which) <= 1e-10

    def test_s2_undefined(self):
        with pytest.raises(UnsupportedSizeError):
            verify_eigen_identity(build_kernel(ChainParams(n=8, m=4, r=1, k=2)), 2)

    @pytest.mark.parametrize('params', [
        ChainParams(n=6, m=3, r=3, k=1),
        ChainParams(n=50, m=20, r=25, k=3),
        SMALL,
    ])
    def test_s1_squared_decomposition(self, params):
        assert s1_squared_decomposition_check(params) <= 1e-12
        assert s1_squared_decomposition_check(params, 'rational') == 0

    def test_decomposition_with_single_red(self):
        assert s1_squared_decomposition_check(ChainParams(n=9, m=4, r=1, k=2), 'rational') == 0


class TestLemmaChecks:
    @pytest.mark.parametrize('ratios', [RatioTriple(0.02, 0.5, 0.5), RatioTriple(0.10, 0.4, 0.4)])
    def test_generic_sequences_pass(self, ratios):
        report = lemma_checks(ratios.params_at(n) for n in range(50, 1001, 50))
        assert report.all_nonnegative
        assert 0 <= report.max_scaled_gap <= 10
        assert report.max_scaled_power is not None
        assert report.passed

    def test_closed_forms_reach_large_n(self):
        ratios = RatioTriple(0.02, 0.5, 0.5)
        report = lemma_checks(ratios.params_at(n) for n in (10_000, 50_000, 100_000))
        assert report.passed

    def test_critical_rows_skip_the_power_check(self):
        ratios = RatioTriple(0.25, 0.5, 0.5)
        report = lemma_checks(ratios.params_at(n) for n in (100, 200))
        assert all(row.scaled_power is None and row.notice for row in report.rows)

    def test_undefined_lambda2_is_noted(self):
        report = lemma_checks([ChainParams(n=5, m=1, r=2, k=1)])
        assert report.rows[0].gap is None
        assert "lambda2" in report.rows[0].notice



class TestExactResidual:
    @pytest.mark.parametrize('params', [
        SMALL,
        ChainParams(n=9, m=4, r=3, k=2),
        ChainParams(n=13, m=6, r=9, k=4),
    ])
    def test_matches_rational_kernel(self, params):
        kernel = build_kernel(params, 'rational')
        for which in (1, 2):
            assert exact_eigen_residual(params, which) == verify_eigen_identity(kernel, which) == 0

    def test_detects_a_wrong_eigenvalue(self, monkeypatch):
        params = ChainParams(n=9, m=4, r=3, k=2)
        monkeypatch.setattr(spectral, 'lambda1_exact', lambda p: Fraction(1, 2))
        assert exact_eigen_residual(params, 1) > 0

    def test_second_pair_needs_two_balls_everywhere(self):
        assert second_eigenpair_defined(ChainParams(n=6, m=3, r=2, k=1))
        assert not second_eigenpair_defined(ChainParams(n=6, m=3, r=1, k=1))
        assert not second_eigenpair_defined(ChainParams(n=3, m=2, r=2, k=1))
        with pytest.raises(UnsupportedSizeError):
            exact_eigen_residual(ChainParams(n=3, m=2, r=2, k=1), 2)


EXHAUSTIVE_MAX_N = 40


@pytest.mark.slow
def test_gap_nonnegative_exhaustive():
    for params in all_params(EXHAUSTIVE_MAX_N):
        if params.n < 4:
            continue
        lam2 = lambda2_exact(params)
        if lam2 is not None:
            assert lambda1_exact(params) ** 2 >= lam2, params


@pytest.mark.slow
def test_eigen_identity_exhaustive_rational():
    scanned = 0
    for params in all_params(EXHAUSTIVE_MAX_N):
        if params.r == 0:
            continue
        assert exact_eigen_residual(params, 1) == 0, params
        if second_eigenpair_defined(params):
            assert exact_eigen_residual(params, 2) == 0, params
            scanned += 1
    assert scanned > 100_000


@pytest.mark.slow
def test_s1_squared_decomposition_exhaustive():
    for params in all_params(EXHAUSTIVE_MAX_N):
        if params.r == 0:
            continue
        assert s1_squared_decomposition_check(params, 'rational') == 0, params


@pytest.mark.slow
def test_float_sample_up_to_n_1000():
    sample = float_sample(seed=42)
    assert len(sample) == 50
    assert max(p.n for p in sample) == 1000
    for params in sample:
        kernel = build_kernel(params)
        magnitude = eigen_magnitude(params)
        for which in (1, 2):
            assert verify_eigen_identity(kernel, which) <= 1e-9 * magnitude, params
        assert s1_squared_decomposition_check(params) <= 1e-12 * magnitude, params
