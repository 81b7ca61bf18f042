"""
Closed-form spectral quantities of the Bernoulli-Laplace chain.

The first two right eigenfunctions s1, s2 and their eigenvalues are known
in closed form. Every formula here is evaluated on exact integers and
Fractions first; floats are produced by a single final division.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Optional

from .backends import resolve_backend
from .chain import ChainParams, TransitionKernel, integer_kernel
from .contracts import LemmaReport, LemmaRow
from .errors import CriticalRegimeError, NonMixingError, UnsupportedSizeError
from .logging_config import get_logger

logger = get_logger(__name__)

DEFAULT_CRITICAL_CONSTANT = 1.0


class Regime(Enum):
    """Mixing regime of a single chain instance."""

    GENERIC = "generic"
    CRITICAL = "critical"
    NON_MIXING = "non-mixing"


# ── Exact closed forms ───────────────────────────────────────────────

def lambda1_exact(params: ChainParams) -> Fraction:
    n, m, k = params.n, params.m, params.k
    return 1 - Fraction(n * k, m * (n - m))


def lambda2_exact(params: ChainParams) -> Optional[Fraction]:
    """Second eigenvalue; None when m or n - m is below 2."""
    n, m, k = params.n, params.m, params.k
    if m < 2 or n - m < 2:
        return None
    return (1
            - Fraction(2 * (n - 1) * k, m * (n - m))
            + Fraction((n - 1) * (n - 2) * k * (k - 1), m * (m - 1) * (n - m) * (n - m - 1)))


def b_coefficients(params: ChainParams) -> tuple[Fraction, Fraction, Fraction]:
    """(b0, b1, b2) with s1^2 = b0 + b1 s1 + b2 s2.

    Raises:
        UnsupportedSizeError: If n < 3 or r = 0
    """
    n, m, r = params.n, params.m, params.r
    if n < 3:
        raise UnsupportedSizeError(f"b-coefficients need n >= 3, got n={n}")
    if r == 0:
        raise UnsupportedSizeError("b-coefficients need r >= 1")
    b0 = Fraction((n - m) * (n - r), (n - 1) * r * m)
    b1 = -Fraction((n - 2 * r) * (n - 2 * m), (n - 2) * r * m)
    b2 = Fraction(n * n * (r - 1) * (m - 1), (n - 1) * (n - 2) * r * m)
    return b0, b1, b2


def s1_exact(params: ChainParams, x: int) -> Fraction:
    if params.r == 0:
        raise UnsupportedSizeError("s1 needs r >= 1")
    return 1 - Fraction(params.n * x, params.r * params.m)


def s2_exact(params: ChainParams, x: int) -> Fraction:
    n, m, r = params.n, params.m, params.r
    if r < 2 or m < 2:
        raise UnsupportedSizeError(f"s2 needs r, m >= 2, got r={r}, m={m}")
    return (1
            - Fraction(2 * (n - 1) * x, r * m)
            + Fraction((n - 1) * (n - 2) * x * (x - 1), r * (r - 1) * m * (m - 1)))


@dataclass(frozen=True)
class EigenfunctionValues:
    """s1 and s2 tabulated over the state space (s2 is None when undefined)."""

    params: ChainParams
    s1: dict[int, Fraction]
    s2: Optional[dict[int, Fraction]]


def eigenfunctions(params: ChainParams) -> EigenfunctionValues:
    states = params.state_space.states()
    s1 = {x: s1_exact(params, x) for x in states}
    s2 = None
    if params.r >= 2 and params.m >= 2:
        s2 = {x: s2_exact(params, x) for x in states}
    return EigenfunctionValues(params=params, s1=s1, s2=s2)


# ── Predictors ───────────────────────────────────────────────────────

def classify(params: ChainParams, critical_constant: float = DEFAULT_CRITICAL_CONSTANT) -> Regime:
    """Finite-n regime: critical when |lambda1| <= C / sqrt(n)."""
    if params.is_full_swap:
        return Regime.NON_MIXING
    lam = lambda1_exact(params)
    if lam == 0 or abs(float(lam)) <= critical_constant / math.sqrt(params.n):
        return Regime.CRITICAL
    return Regime.GENERIC


def t_n(params: ChainParams) -> float:
    """log(n) / (2 |log|1 - kn/(m(n-m))||).

    Raises:
        CriticalRegimeError: If lambda1 = 0 (use q_n)
        NonMixingError: If |lambda1| = 1
    """
    lam = lambda1_exact(params)
    if abs(lam) == 1:
        raise NonMixingError("t_n undefined: |lambda1| = 1, the chain does not mix", context=str(params))
    if lam == 0:
        raise CriticalRegimeError("t_n undefined: lambda1 = 0, use q_n instead", context=str(params))
    return math.log(params.n) / (2 * abs(math.log(abs(float(lam)))))


def q_n(params: ChainParams) -> float:
    """log(n) / |log|lambda2||, and 1 when lambda2 = 0."""
    lam2 = lambda2_exact(params)
    if lam2 is None:
        raise UnsupportedSizeError("q_n needs lambda2, which needs m, n - m >= 2", context=str(params))
    if lam2 == 0:
        return 1.0
    if abs(lam2) == 1:
        return math.inf
    return math.log(params.n) / abs(math.log(abs(float(lam2))))


@dataclass(frozen=True)
class SpectralData:
    """Closed-form spectral summary of one chain instance."""

    params: ChainParams
    lambda1: float
    lambda2: Optional[float]
    lambda1_exact: Fraction
    lambda2_exact: Optional[Fraction]
    b0: Optional[float]
    b1: Optional[float]
    b2: Optional[float]
    t_n: Optional[float]
    q_n: Optional[float]
    regime: Regime


def eigen_data(params: ChainParams,
               critical_constant: float = DEFAULT_CRITICAL_CONSTANT) -> SpectralData:
    """Fill every closed-form field; undefined ones are None.

    Raises:
        UnsupportedSizeError: If n < 3
    """
    if params.n < 3:
        raise UnsupportedSizeError(f"spectral data needs n >= 3, got n={params.n}")
    lam1 = lambda1_exact(params)
    lam2 = lambda2_exact(params)
    b0 = b1 = b2 = None
    if params.r >= 1:
        b0, b1, b2 = (float(b) for b in b_coefficients(params))
    try:
        tn: Optional[float] = t_n(params)
    except (CriticalRegimeError, NonMixingError):
        tn = None
    return SpectralData(
        params=params,
        lambda1=float(lam1),
        lambda2=None if lam2 is None else float(lam2),
        lambda1_exact=lam1,
        lambda2_exact=lam2,
        b0=b0, b1=b1, b2=b2,
        t_n=tn,
        q_n=None if lam2 is None else q_n(params),
        regime=classify(params, critical_constant),
    )


# ── Numeric verification ─────────────────────────────────────────────

def second_eigenpair_defined(params: ChainParams) -> bool:
    """s2 needs r, m >= 2 and lambda2 needs n - m >= 2."""
    return params.r >= 2 and lambda2_exact(params) is not None


def _eigenpair(params: ChainParams, which: int) -> tuple[dict[int, Fraction], Fraction]:
    if which == 1:
        return eigenfunctions(params).s1, lambda1_exact(params)
    if which == 2:
        values, lam = eigenfunctions(params).s2, lambda2_exact(params)
        if values is None or lam is None:
            raise UnsupportedSizeError("s2 / lambda2 undefined for these parameters", context=str(params))
        return values, lam
    raise ValueError(f"which must be 1 or 2, got {which}")


def verify_eigen_identity(kernel: TransitionKernel, which: int) -> Any:
    """max_x |sum_y p(x,y) s_i(y) - lambda_i s_i(x)| in the kernel's backend.

    Exactly zero in the rational backend.
    """
    backend = kernel.backend
    values, lam = _eigenpair(kernel.params, which)
    s = backend.zeros(kernel.size)
    for i, x in enumerate(kernel.support.states()):
        s[i] = backend.from_exact(values[x])
    residual = kernel.matrix @ s - backend.from_exact(lam) * s
    return max(abs(v) for v in residual)


def exact_eigen_residual(params: ChainParams, which: int) -> Fraction:
    """verify_eigen_identity on the integer kernel, without building Fractions per entry."""
    values, lam = _eigenpair(params, which)
    numerators, denom = integer_kernel(params)
    scale = math.lcm(*(v.denominator for v in values.values()))
    s = [int(values[x] * scale) for x in params.state_space.states()]
    worst = 0
    for row, s_x in zip(numerators, s):
        lhs = sum(p * v for p, v in zip(row, s) if p)
        worst = max(worst, abs(lhs * lam.denominator - lam.numerator * denom * s_x))
    return Fraction(worst, lam.denominator * denom * scale)


def eigen_magnitude(params: ChainParams) -> float:
    """max(1, max s1^2, max |s2|): the size float residuals should be judged against."""
    funcs = eigenfunctions(params)
    magnitude = max(1.0, max(float(v) ** 2 for v in funcs.s1.values()))
    if funcs.s2 is not None:
        magnitude = max(magnitude, max(abs(float(v)) for v in funcs.s2.values()))
    return magnitude


def s1_squared_decomposition_check(params: ChainParams, backend: str = "float") -> Any:
    """max_x |s1(x)^2 - (b0 + b1 s1(x) + b2 s2(x))|.

    When r or m is 1 the s2 term carries b2 = 0 and is dropped; the state
    space is then a subset of {0, 1}.
    """
    arith = resolve_backend(backend)
    b0, b1, b2 = (arith.from_exact(b) for b in b_coefficients(params))
    funcs = eigenfunctions(params)
    worst = arith.from_exact(0)
    for x in params.state_space.states():
        s1 = arith.from_exact(funcs.s1[x])
        s2 = arith.from_exact(funcs.s2[x]) if funcs.s2 is not None else arith.from_exact(0)
        worst = max(worst, abs(s1 * s1 - (b0 + b1 * s1 + b2 * s2)))
    return worst


def _scaled_power(n: int, lam2: Fraction, tn: float) -> float:
    if lam2 == 0:
        return 0.0
    return math.exp(math.log(n) + tn * math.log(abs(float(lam2))))


def lemma_checks(params_sequence: Iterable[ChainParams],
                 bound: float = 10.0,
                 critical_constant: float = DEFAULT_CRITICAL_CONSTANT) -> LemmaReport:
    """Per n: lambda1^2 - lambda2, n (lambda1^2 - lambda2) and n |lambda2|^t_n.

    The power term is only evaluated for generic instances; the others
    are skipped with a notice.
    """
    rows: list[LemmaRow] = []
    for params in params_sequence:
        lam1, lam2 = lambda1_exact(params), lambda2_exact(params)
        if lam2 is None:
            rows.append(LemmaRow(n=params.n, notice="lambda2 undefined (m or n-m below 2)"))
            continue
        gap = lam1 * lam1 - lam2
        row = LemmaRow(
            n=params.n,
            gap=float(gap),
            gap_nonnegative=gap >= 0,
            scaled_gap=float(params.n * gap),
        )
        if classify(params, critical_constant) is Regime.GENERIC:
            row.scaled_power = _scaled_power(params.n, lam2, t_n(params))
        else:
            row.notice = "non-generic instance: lambda2^t_n check skipped"
        rows.append(row)
        logger.debug("lemma row %s", row)
    return LemmaReport.from_rows(rows, bound=bound)


def limiting_lambda1(gamma: float, h: float) -> float:
    """Large-n limit of lambda1 at fixed ratios k/n = gamma, m/n = h."""
    return 1 - gamma / (h * (1 - h))


def limiting_t_n(ratios: Any, n: int) -> float:
    """log(n) / (2 |log|1 - gamma / (h(1 - h))||) for a ratio triple.

    Raises:
        CriticalRegimeError: If gamma = h(1 - h)
        NonMixingError: If the limiting lambda1 has modulus one
    """
    lam = limiting_lambda1(ratios.gamma, ratios.h)
    if math.isclose(abs(lam), 1.0, abs_tol=1e-15):
        raise NonMixingError("limiting lambda1 has modulus one", context=str(ratios))
    if math.isclose(lam, 0.0, abs_tol=1e-15):
        raise CriticalRegimeError("limiting lambda1 vanishes, use q_n instead", context=str(ratios))
    return math.log(n) / (2 * abs(math.log(abs(lam))))
