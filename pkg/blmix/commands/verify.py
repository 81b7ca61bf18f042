"""Property suites behind ``blmix verify``."""
from __future__ import annotations

from typing import Callable

import numpy as np

from ..chain import ChainParams, build_kernel
from ..contracts import CheckResult, SuiteResult, VerifyReport
from ..coupling import (
    adjacent_difference_law,
    contraction_coefficient,
    contraction_estimate,
    coupled_step_law,
    difference_law,
    smallest_kappa,
    tau_hitting_time,
)
from ..dn_approx import llt_decay_check, normalizer_check
from ..logging_config import get_logger
from ..mixing import RatioTriple
from ..spectral import (
    eigen_magnitude,
    exact_eigen_residual,
    lemma_checks,
    s1_squared_decomposition_check,
    second_eigenpair_defined,
    verify_eigen_identity,
)

logger = get_logger(__name__)

EIGEN_FLOAT_TOL = 1e-9
DECOMPOSITION_TOL = 1e-12
RATIONAL_SCAN_MAX_N = 16
FLOAT_SAMPLE_SIZE = 50
FLOAT_SAMPLE_MAX_N = 1000

FLOAT_SAMPLE = (
    ChainParams(n=50, m=25, r=25, k=5),
    ChainParams(n=200, m=80, r=90, k=10),
    ChainParams(n=100, m=40, r=30, k=7),
    ChainParams(n=1000, m=500, r=500, k=20),
)
#: (params, x, y) with x - y = 1
CONTRACTION_CASES = (
    (ChainParams(n=6, m=3, r=3, k=1), 2, 1),
    (ChainParams(n=20, m=10, r=10, k=3), 5, 4),
    (ChainParams(n=50, m=25, r=25, k=5), 13, 12),
    (ChainParams(n=100, m=50, r=50, k=5), 25, 24),
    (ChainParams(n=60, m=20, r=30, k=4), 10, 9),
)
#: far-apart start pair for the hitting-time tail, at the smallest admissible kappa
TAU_RATIOS = RatioTriple(0.02, 0.5, 0.5)
TAU_CASE = (TAU_RATIOS.params_at(400), 0, 200)
GENERIC_RATIOS = (RatioTriple(0.02, 0.5, 0.5), RatioTriple(0.10, 0.4, 0.4))
LLT_NS = tuple(range(100, 2001, 100))


def all_params(max_n: int):
    """Every valid (n, m, r, k) with 3 <= n <= max_n."""
    for n in range(3, max_n + 1):
        for m in range(1, n):
            for r in range(0, n + 1):
                for k in range(1, min(m, n - m) + 1):
                    yield ChainParams(n=n, m=m, r=r, k=k)


def float_sample(seed: int = 42, size: int = FLOAT_SAMPLE_SIZE) -> list[ChainParams]:
    """FLOAT_SAMPLE topped up with seeded draws; s2 is defined for every instance."""
    rng = np.random.default_rng(seed)
    sample = list(FLOAT_SAMPLE)
    while len(sample) < size:
        n = int(rng.integers(10, FLOAT_SAMPLE_MAX_N + 1))
        m = int(rng.integers(2, n - 1))
        r = int(rng.integers(2, n - 1))
        k = int(rng.integers(1, min(m, n - m) + 1))
        sample.append(ChainParams(n=n, m=m, r=r, k=k))
    return sample


def spectral_suite(seed: int = 42, **_: object) -> SuiteResult:
    checks = []

    worst_exact = 0
    scanned = 0
    for params in all_params(RATIONAL_SCAN_MAX_N):
        if not second_eigenpair_defined(params):
            continue
        worst_exact = max(worst_exact, exact_eigen_residual(params, 1), exact_eigen_residual(params, 2))
        scanned += 1
    checks.append(CheckResult(name="eigen_identity_rational", passed=worst_exact == 0,
                              detail={"instances": scanned, "max_residual": float(worst_exact)}))

    worst_float = 0.0
    worst_decomposition = 0.0
    # residuals relative to eigen_magnitude; s2 reaches 1e5 when r and m are small
    sample = float_sample(seed)
    for params in sample:
        kernel = build_kernel(params, "float")
        magnitude = eigen_magnitude(params)
        residual = max(verify_eigen_identity(kernel, 1), verify_eigen_identity(kernel, 2))
        worst_float = max(worst_float, residual / magnitude)
        worst_decomposition = max(worst_decomposition,
                                  s1_squared_decomposition_check(params, "float") / magnitude)
    checks.append(CheckResult(name="eigen_identity_float", passed=worst_float <= EIGEN_FLOAT_TOL,
                              detail={"instances": len(sample), "max_relative_residual": float(worst_float)}))
    checks.append(CheckResult(name="s1_squared_decomposition",
                              passed=worst_decomposition <= DECOMPOSITION_TOL,
                              detail={"max_relative_residual": float(worst_decomposition)}))

    for ratios in GENERIC_RATIOS:
        report = lemma_checks(ratios.params_at(n) for n in range(50, 1001, 50))
        checks.append(CheckResult(name=f"lemma_scaling {ratios}", passed=report.passed,
                                  detail={"max_scaled_gap": report.max_scaled_gap,
                                          "max_scaled_power": report.max_scaled_power}))
    return SuiteResult(suite="spectral", passed=all(c.passed for c in checks), checks=checks)


def coupling_suite(seed: int = 42, trials: int = 100_000, **_: object) -> SuiteResult:
    checks = []
    for params, x, y in CONTRACTION_CASES:
        exact = difference_law(coupled_step_law(params, x, y, "rational"))
        expected = {d: p for d, p in adjacent_difference_law(params).items() if p}
        checks.append(CheckResult(name=f"exact_adjacent_law {params.as_dict()}",
                                  passed=exact == expected,
                                  detail={str(d): str(p) for d, p in sorted(exact.items())}))

        estimate = contraction_estimate(params, x, y, t=1, trials=trials, seed=seed)
        coefficient = float(contraction_coefficient(params))
        checks.append(CheckResult(
            name=f"contraction {params.as_dict()}",
            passed=abs(estimate.mean - coefficient) <= 3 * estimate.stderr,
            detail={"mean": estimate.mean, "stderr": estimate.stderr, "coefficient": coefficient},
        ))

    params, x, y = TAU_CASE
    kappa = smallest_kappa(TAU_RATIOS)
    tau = tau_hitting_time(params, x, y, kappa=kappa, trials=min(trials, 10_000), seed=seed)
    checks.append(CheckResult(
        name=f"tau_tail {params.as_dict()} kappa={kappa}",
        passed=tau.kappa_admissible and tau.within_bound,
        detail={"tail": tau.tail_probability, "bound": tau.tail_bound, "horizon": tau.horizon},
    ))
    return SuiteResult(suite="coupling", passed=all(c.passed for c in checks), checks=checks)


def llt_suite(seed: int = 42, **_: object) -> SuiteResult:
    checks = []
    for ratios in GENERIC_RATIOS:
        normalizer = normalizer_check(ratios.params_at(n) for n in LLT_NS)
        checks.append(CheckResult(name=f"normalizer {ratios}", passed=normalizer.passed,
                                  detail={"max_scaled_error": normalizer.max_scaled_error}))
        decay = llt_decay_check(ratios, LLT_NS)
        checks.append(CheckResult(name=f"llt_decay {ratios}", passed=decay.passed,
                                  detail={"median": decay.median_scaled, "last": decay.last_scaled}))
    return SuiteResult(suite="llt", passed=all(c.passed for c in checks), checks=checks)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "spectral": spectral_suite,
    "coupling": coupling_suite,
    "llt": llt_suite,
}


def run_suites(name: str = "all", seed: int = 42, trials: int = 100_000) -> VerifyReport:
    names = list(SUITES) if name == "all" else [name]
    results = []
    for suite in names:
        logger.info("running %s suite", suite)
        results.append(SUITES[suite](seed=seed, trials=trials))
    return VerifyReport(passed=all(r.passed for r in results), seed=seed, suites=results)
