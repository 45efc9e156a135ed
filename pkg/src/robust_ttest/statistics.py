"""Pivotal one-sample location statistics.

Three studentized statistics for testing a hypothesized location mu:

* ``t_a``   -- median / MAD, scaled by sqrt(2n/pi) * PhiInv(3/4)
* ``t_b``   -- Hodges-Lehmann / Shamos, scaled by sqrt(6n/pi) * PhiInv(3/4)
* ``student_t`` -- the classical mean / standard-deviation statistic

All three are pivotal: invariant under affine rescaling of the data with
a matching shift of mu.  The robust ones converge to N(0,1) but need the
Monte Carlo tables from :mod:`robust_ttest.tables` at small n.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from scipy.special import ndtri

from .errors import ZeroScale
from .estimators import (
    PairIndexConvention,
    _as_sample,
    hodges_lehmann,
    mad,
    median,
    shamos,
)

__all__ = ["StatisticKind", "NormalConstants", "CONSTANTS", "t_a", "t_b", "student_t"]


class StatisticKind(enum.Enum):
    T_A = "ta"
    T_B = "tb"
    STUDENT = "student"


def _phi_inv_3_4() -> float:
    # Cephes ndtri rational approximation; absolute error well below 1e-13.
    # Computed, not hard-coded, so the precision stays auditable.
    return float(ndtri(0.75))


@dataclass(frozen=True)
class NormalConstants:
    """Normal-quantile constant and the sample-size scale factors."""

    phi_inv_3_4: float = field(default_factory=_phi_inv_3_4)

    def scale_ta(self, n: int) -> float:
        return math.sqrt(2.0 * n / math.pi) * self.phi_inv_3_4

    def scale_tb(self, n: int) -> float:
        return math.sqrt(6.0 * n / math.pi) * self.phi_inv_3_4


CONSTANTS = NormalConstants()


def t_a(values, mu: float) -> float:
    """Median/MAD statistic: sqrt(2n/pi) * PhiInv(3/4) * (median - mu) / MAD.

    Raises ZeroScale when the MAD vanishes (a majority-tied sample), since
    the statistic is undefined there.
    """
    arr = _as_sample(values, 2, "t_a")
    scale = mad(arr)
    if scale == 0.0:
        raise ZeroScale("t_a: MAD is zero")
    return CONSTANTS.scale_ta(arr.size) * (median(arr) - mu) / scale


def t_b(values, mu: float, convention: PairIndexConvention = PairIndexConvention.STRICT) -> float:
    """Hodges-Lehmann/Shamos statistic:
    sqrt(6n/pi) * PhiInv(3/4) * (HL - mu) / Shamos.

    ``convention`` selects the pairwise index set used for *both* the
    Walsh-average median and the difference median (STRICT: i < j,
    INCLUSIVE: i <= j).  STRICT is the default and is the convention the
    reference quantile tables reproduce.
    """
    arr = _as_sample(values, 2, "t_b")
    scale = shamos(arr, convention)
    if scale == 0.0:
        raise ZeroScale("t_b: Shamos estimate is zero")
    return CONSTANTS.scale_tb(arr.size) * (hodges_lehmann(arr, convention) - mu) / scale


def student_t(values, mu: float) -> float:
    """Classical statistic (mean - mu) / (S / sqrt(n)) with the n-1
    denominator in S."""
    arr = _as_sample(values, 2, "student_t")
    s = float(arr.std(ddof=1))
    if s == 0.0:
        raise ZeroScale("student_t: sample standard deviation is zero")
    return float((arr.mean() - mu) / (s / math.sqrt(arr.size)))
