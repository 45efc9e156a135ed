"""Confidence intervals and hypothesis tests for the location mu.

The robust intervals invert the tabulated statistics: with q_u(a) the
upper-a quantile of the null distribution, solving
q_u(1-a1) <= T <= q_u(a2) for mu gives

    [loc_hat - q_u(a2) * c * scale_hat,  loc_hat - q_u(1-a1) * c * scale_hat]

where c folds the statistic's normalizing constants back in
(sqrt(pi/2)/(PhiInv(3/4) sqrt(n)) for median/MAD,
sqrt(pi/6)/(PhiInv(3/4) sqrt(n)) for Hodges-Lehmann/Shamos).

The tables store lower quantiles; every upper-quantile read goes through
``upper_quantile`` so the q_upper(a) = q_lower(1-a) conversion lives in
exactly one place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as _sps

from .errors import GridTooCoarse, TableMissing, ZeroScale
from .estimators import PairIndexConvention, _as_sample, hodges_lehmann, mad, median, shamos
from .statistics import CONSTANTS, StatisticKind, student_t, t_a, t_b
from .tables import Alternative, QuantileTable, lookup_quantile, p_value

__all__ = [
    "ConfidenceInterval",
    "TestResult",
    "upper_quantile",
    "ci_ta",
    "ci_tb",
    "ci_student",
    "test_mu",
]


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    alpha1: float
    alpha2: float
    method: StatisticKind

    @property
    def alpha(self) -> float:
        return self.alpha1 + self.alpha2

    @property
    def length(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper


@dataclass(frozen=True)
class TestResult:
    __test__ = False  # domain type, not a pytest class

    statistic_value: float
    critical_value: float
    p_value: float | None
    reject: bool
    mu0: float
    alpha: float
    method: StatisticKind
    alternative: Alternative = Alternative.TWO_SIDED


def upper_quantile(table: QuantileTable, n: int, alpha: float) -> float:
    """Upper-alpha quantile from a lower-quantile table:
    q_upper(a) = q_lower(1 - a)."""
    return lookup_quantile(table, n, 1.0 - alpha)


def _check_alphas(alpha1: float, alpha2: float) -> None:
    alpha = alpha1 + alpha2
    if not (0.0 < alpha < 1.0 and alpha1 > 0.0 and alpha2 > 0.0):
        raise ValueError(f"need alpha1, alpha2 > 0 with alpha1 + alpha2 in (0, 1); got {alpha1}, {alpha2}")


def ci_ta(values, alpha1: float, alpha2: float, table: QuantileTable) -> ConfidenceInterval:
    """Median/MAD confidence interval for mu at level 1 - (alpha1+alpha2)."""
    _check_alphas(alpha1, alpha2)
    arr = _as_sample(values, 2, "ci_ta")
    scale = mad(arr)
    if scale == 0.0:
        raise ZeroScale("ci_ta: MAD is zero")
    n = arr.size
    loc = median(arr)
    c = math.sqrt(math.pi / 2.0) / (CONSTANTS.phi_inv_3_4 * math.sqrt(n))
    q_hi = upper_quantile(table, n, alpha2)          # upper alpha2 quantile
    q_lo = upper_quantile(table, n, 1.0 - alpha1)    # upper (1 - alpha1) quantile
    return ConfidenceInterval(
        lower=loc - q_hi * c * scale,
        upper=loc - q_lo * c * scale,
        alpha1=alpha1,
        alpha2=alpha2,
        method=StatisticKind.T_A,
    )


def ci_tb(values, alpha1: float, alpha2: float, table: QuantileTable) -> ConfidenceInterval:
    """Hodges-Lehmann/Shamos confidence interval for mu.

    The pairwise index convention is taken from the table so the interval
    always inverts the same statistic the table tabulates.
    """
    _check_alphas(alpha1, alpha2)
    arr = _as_sample(values, 2, "ci_tb")
    convention = table.convention or PairIndexConvention.STRICT
    scale = shamos(arr, convention)
    if scale == 0.0:
        raise ZeroScale("ci_tb: Shamos estimate is zero")
    n = arr.size
    loc = hodges_lehmann(arr, convention)
    c = math.sqrt(math.pi / 6.0) / (CONSTANTS.phi_inv_3_4 * math.sqrt(n))
    q_hi = upper_quantile(table, n, alpha2)
    q_lo = upper_quantile(table, n, 1.0 - alpha1)
    return ConfidenceInterval(
        lower=loc - q_hi * c * scale,
        upper=loc - q_lo * c * scale,
        alpha1=alpha1,
        alpha2=alpha2,
        method=StatisticKind.T_B,
    )


def ci_student(values, alpha: float) -> ConfidenceInterval:
    """Classical t interval: mean +- t_{alpha/2, n-1} S / sqrt(n)."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    arr = _as_sample(values, 2, "ci_student")
    s = float(arr.std(ddof=1))
    if s == 0.0:
        raise ZeroScale("ci_student: sample standard deviation is zero")
    n = arr.size
    margin = float(_sps.t.ppf(1.0 - alpha / 2.0, n - 1)) * s / math.sqrt(n)
    mean = float(arr.mean())
    return ConfidenceInterval(
        lower=mean - margin,
        upper=mean + margin,
        alpha1=alpha / 2.0,
        alpha2=alpha / 2.0,
        method=StatisticKind.STUDENT,
    )


def _statistic(method: StatisticKind, arr: np.ndarray, mu0: float, convention: PairIndexConvention) -> float:
    if method is StatisticKind.T_A:
        return t_a(arr, mu0)
    if method is StatisticKind.T_B:
        return t_b(arr, mu0, convention)
    return student_t(arr, mu0)


def test_mu(
    values,
    mu0: float,
    alpha: float,
    method: StatisticKind,
    table: QuantileTable | None = None,
    alternative: Alternative = Alternative.TWO_SIDED,
) -> TestResult:
    """Test H0: mu = mu0 against the chosen alternative.

    T_A/T_B critical values come from the supplied table (required); the
    Student critical value is the exact t quantile.  The p-value is
    filled when it can be computed exactly (Student) or when the table
    grid is dense enough; otherwise it is None.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    arr = _as_sample(values, 2, "test_mu")
    n = arr.size
    if method in (StatisticKind.T_A, StatisticKind.T_B) and table is None:
        raise TableMissing(f"{method.value}: a quantile table is required")
    convention = (table.convention if table else None) or PairIndexConvention.STRICT
    stat = _statistic(method, arr, mu0, convention)

    tail = alpha / 2.0 if alternative is Alternative.TWO_SIDED else alpha
    if method is StatisticKind.STUDENT:
        critical = float(_sps.t.ppf(1.0 - tail, n - 1))
    else:
        critical = upper_quantile(table, n, tail)

    if alternative is Alternative.TWO_SIDED:
        reject = abs(stat) > critical
    elif alternative is Alternative.GREATER:
        reject = stat > critical
    else:
        reject = stat < -critical

    pval: float | None
    if method is StatisticKind.STUDENT:
        if alternative is Alternative.TWO_SIDED:
            pval = 2.0 * float(_sps.t.sf(abs(stat), n - 1))
        elif alternative is Alternative.GREATER:
            pval = float(_sps.t.sf(stat, n - 1))
        else:
            pval = float(_sps.t.cdf(stat, n - 1))
    else:
        try:
            pval = p_value(table, n, stat, alternative)
        except GridTooCoarse:
            pval = None

    return TestResult(
        statistic_value=stat,
        critical_value=critical,
        p_value=pval,
        reject=reject,
        mu0=mu0,
        alpha=alpha,
        method=method,
        alternative=alternative,
    )
