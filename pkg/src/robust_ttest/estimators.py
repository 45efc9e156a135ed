"""Robust location and scale estimators.

Four estimators: the sample median, the median absolute deviation (MAD,
returned raw with no consistency factor), the Hodges-Lehmann estimator
(median of pairwise Walsh averages) and the Shamos estimator (median of
pairwise absolute differences).

The two pairwise estimators never materialize the O(n^2) pairs for large
samples: ranks are selected from the implicit pairwise set by bisection
over the value range with two-pointer counting, which is exact (bitwise
equal to sorting the materialized set) and O(n log n) expected time.
Below ``SELECTION_MIN_N`` observations plain materialization is cheaper
and is used instead; both paths must agree exactly.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import (
    EmptySample,
    NonFiniteSample,
    RankOutOfRange,
    SampleTooSmall,
)

__all__ = [
    "PairIndexConvention",
    "PairwiseKind",
    "SELECTION_MIN_N",
    "median",
    "mad",
    "hodges_lehmann",
    "shamos",
    "pairwise_select",
    "pair_count",
]

# Below this sample size the O(n^2) materialization beats the selection
# machinery's overhead.  Both paths are exact and tested to agree.
SELECTION_MIN_N = 32


class PairIndexConvention(enum.Enum):
    """Index set used when forming pairwise values.

    STRICT uses i < j (n(n-1)/2 pairs).  INCLUSIVE uses i <= j, which adds
    the n diagonal terms: each observation paired with itself (a zero for
    absolute differences, the observation itself for Walsh averages).
    """

    STRICT = "strict"
    INCLUSIVE = "inclusive"


class PairwiseKind(enum.Enum):
    WALSH_AVERAGE = "walsh_average"
    ABS_DIFFERENCE = "abs_difference"


# Convention used when the caller does not specify one.  Walsh averages
# conventionally include the diagonal; pairwise differences exclude it.
_DEFAULT_CONVENTION = {
    PairwiseKind.WALSH_AVERAGE: PairIndexConvention.INCLUSIVE,
    PairwiseKind.ABS_DIFFERENCE: PairIndexConvention.STRICT,
}


def _as_sample(values, min_n: int, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise EmptySample(f"{what}: empty sample")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteSample(f"{what}: sample contains NaN or infinite values")
    if arr.size < min_n:
        raise SampleTooSmall(f"{what}: needs at least {min_n} observations, got {arr.size}")
    return arr


def _middle_of_sorted(sorted_vals: np.ndarray) -> float:
    m = sorted_vals.size
    if m % 2 == 1:
        return float(sorted_vals[m // 2])
    return float(0.5 * (sorted_vals[m // 2 - 1] + sorted_vals[m // 2]))


def median(values) -> float:
    """Sample median; for even counts, the mean of the two middle order
    statistics."""
    arr = _as_sample(values, 1, "median")
    return _middle_of_sorted(np.sort(arr))


def mad(values) -> float:
    """Median absolute deviation about the sample median, unscaled."""
    arr = _as_sample(values, 1, "mad")
    m = _middle_of_sorted(np.sort(arr))
    return _middle_of_sorted(np.sort(np.abs(arr - m)))


def pair_count(n: int, kind: PairwiseKind, convention: PairIndexConvention) -> int:
    """Number of pairwise values under the given index convention."""
    if convention is PairIndexConvention.INCLUSIVE:
        return n * (n + 1) // 2
    return n * (n - 1) // 2


def _pair_value(xs: np.ndarray, i: int, j: int, kind: PairwiseKind) -> float:
    # xs sorted ascending and j >= i, so the difference needs no abs().
    if kind is PairwiseKind.WALSH_AVERAGE:
        return 0.5 * (xs[i] + xs[j])
    return xs[j] - xs[i]


def _materialize(xs: np.ndarray, kind: PairwiseKind, convention: PairIndexConvention) -> np.ndarray:
    n = xs.size
    d = 0 if convention is PairIndexConvention.INCLUSIVE else 1
    if kind is PairwiseKind.WALSH_AVERAGE:
        iu, ju = np.triu_indices(n, k=d)
        return 0.5 * (xs[iu] + xs[ju])
    iu, ju = np.triu_indices(n, k=1)
    diffs = xs[ju] - xs[iu]
    if convention is PairIndexConvention.INCLUSIVE:
        diffs = np.concatenate([np.zeros(n), diffs])
    return diffs


def _walsh_count(xs: np.ndarray, t: float, d: int):
    """Count Walsh averages (j >= i + d) that are <= t.

    Returns (count, maxj) where maxj[i] is the largest valid j in row i
    with value <= t, or i + d - 1 when the row has none.  Two-pointer
    sweep; the <=t region is a staircase because the pair value is
    nondecreasing in both indices.
    """
    n = xs.size
    maxj = np.empty(n, dtype=np.int64)
    count = 0
    jp = n - 1
    for i in range(n):
        lo = i + d
        while jp >= lo and 0.5 * (xs[i] + xs[jp]) > t:
            jp -= 1
        row_max = jp if jp >= lo else lo - 1
        maxj[i] = row_max
        count += row_max - lo + 1
    return count, maxj


def _diff_count(xs: np.ndarray, t: float):
    """Count strict pairwise differences xs[j]-xs[i] (i<j) that are <= t.

    Returns (count, mini) where mini[j] is the smallest valid i in column
    j; the valid range is [mini[j], j-1] since the difference decreases
    in i.
    """
    n = xs.size
    mini = np.empty(n, dtype=np.int64)
    count = 0
    a = 0
    for j in range(n):
        while a < j and xs[j] - xs[a] > t:
            a += 1
        mini[j] = a
        count += j - a
    return count, mini


def _count_le(xs, t, kind, d):
    if kind is PairwiseKind.WALSH_AVERAGE:
        return _walsh_count(xs, t, d)
    return _diff_count(xs, t)


def _materialize_between(xs, kind, d, bounds_lo, bounds_hi):
    """Collect pair values v with lo < v <= hi from the per-row bounds of
    the two counting sweeps."""
    n = xs.size
    out = []
    if kind is PairwiseKind.WALSH_AVERAGE:
        for i in range(n):
            for j in range(bounds_lo[i] + 1, bounds_hi[i] + 1):
                out.append(0.5 * (xs[i] + xs[j]))
    else:
        # bounds are per-column minimum i; hi admits more (smaller) i's.
        for j in range(n):
            for i in range(bounds_hi[j], bounds_lo[j]):
                out.append(xs[j] - xs[i])
    return np.asarray(out)


def _select_fast(xs: np.ndarray, kind: PairwiseKind, d: int, rank: int, m: int) -> float:
    """Exact rank selection from the implicit pairwise set.

    Bisects on the value range, counting pairs <= mid in O(n) per probe,
    then sorts the few surviving candidates.  Candidate values are
    computed by the same expressions as materialization, so the result is
    bitwise identical to sorting the full set.
    """
    n = xs.size
    if kind is PairwiseKind.WALSH_AVERAGE:
        lo_val = 0.5 * (xs[0] + xs[d])
        hi_val = 0.5 * (xs[n - 1 - d] + xs[n - 1])
    else:
        lo_val = float(np.min(xs[1:] - xs[:-1]))
        hi_val = xs[n - 1] - xs[0]

    lo_count, lo_bounds = _count_le(xs, lo_val, kind, d)
    if rank <= lo_count:
        return float(lo_val)  # everything <= the minimum equals it
    hi_count, hi_bounds = _count_le(xs, hi_val, kind, d)

    limit = max(4 * n, 256)
    while hi_count - lo_count > limit:
        mid = 0.5 * lo_val + 0.5 * hi_val
        if not (lo_val < mid < hi_val):
            # Float resolution exhausted: every candidate in (lo, hi]
            # carries the value hi.
            return float(hi_val)
        c, bounds = _count_le(xs, mid, kind, d)
        if c >= rank:
            hi_val, hi_count, hi_bounds = mid, c, bounds
        else:
            lo_val, lo_count, lo_bounds = mid, c, bounds

    candidates = _materialize_between(xs, kind, d, lo_bounds, hi_bounds)
    candidates.sort()
    return float(candidates[rank - lo_count - 1])


def _select_rank(xs: np.ndarray, kind: PairwiseKind, convention: PairIndexConvention, rank: int) -> float:
    n = xs.size
    m = pair_count(n, kind, convention)
    if not 1 <= rank <= m:
        raise RankOutOfRange(f"rank {rank} outside [1, {m}]")
    if kind is PairwiseKind.ABS_DIFFERENCE and convention is PairIndexConvention.INCLUSIVE:
        # The n diagonal zeros are the smallest values; ranks beyond them
        # map onto the strict set.
        if rank <= n:
            return 0.0
        return _select_rank(xs, kind, PairIndexConvention.STRICT, rank - n)
    d = 0 if convention is PairIndexConvention.INCLUSIVE else 1
    if n < SELECTION_MIN_N:
        vals = _materialize(xs, kind, convention)
        return float(np.partition(vals, rank - 1)[rank - 1])
    return _select_fast(xs, kind, d, rank, m)


def pairwise_select(values, kind: PairwiseKind, rank: int, convention: PairIndexConvention | None = None) -> float:
    """rank-th smallest element of the implicit pairwise set (1-based).

    With ``convention`` unset, Walsh averages include the diagonal
    (i <= j) and absolute differences exclude it (i < j).
    """
    if convention is None:
        convention = _DEFAULT_CONVENTION[kind]
    min_n = 1 if convention is PairIndexConvention.INCLUSIVE else 2
    xs = np.sort(_as_sample(values, min_n, "pairwise_select"))
    return _select_rank(xs, kind, convention, rank)


def _pairwise_median(xs: np.ndarray, kind: PairwiseKind, convention: PairIndexConvention) -> float:
    n = xs.size
    m = pair_count(n, kind, convention)
    if n < SELECTION_MIN_N:
        vals = _materialize(xs, kind, convention)
        if m % 2 == 1:
            return float(np.partition(vals, m // 2)[m // 2])
        part = np.partition(vals, [m // 2 - 1, m // 2])
        return float(0.5 * (part[m // 2 - 1] + part[m // 2]))
    if m % 2 == 1:
        return _select_rank(xs, kind, convention, (m + 1) // 2)
    a = _select_rank(xs, kind, convention, m // 2)
    b = _select_rank(xs, kind, convention, m // 2 + 1)
    return float(0.5 * (a + b))


def hodges_lehmann(values, convention: PairIndexConvention = PairIndexConvention.INCLUSIVE) -> float:
    """Median of the pairwise Walsh averages (x_i + x_j)/2.

    The default index set i <= j includes each observation averaged with
    itself, giving n(n+1)/2 values; a singleton sample returns its only
    element.  ``PairIndexConvention.STRICT`` restricts to i < j.
    """
    min_n = 1 if convention is PairIndexConvention.INCLUSIVE else 2
    xs = np.sort(_as_sample(values, min_n, "hodges_lehmann"))
    return _pairwise_median(xs, PairwiseKind.WALSH_AVERAGE, convention)


def shamos(values, convention: PairIndexConvention = PairIndexConvention.STRICT) -> float:
    """Median of the pairwise absolute differences |x_i - x_j|.

    The default index set is i < j (n(n-1)/2 values).
    ``PairIndexConvention.INCLUSIVE`` adds the n zero diagonal terms.
    """
    xs = np.sort(_as_sample(values, 2, "shamos"))
    return _pairwise_median(xs, PairwiseKind.ABS_DIFFERENCE, convention)
