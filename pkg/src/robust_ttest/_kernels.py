"""Batched statistic kernels for the Monte Carlo engine.

Each kernel evaluates one statistic for every row of a (replications, n)
sample matrix.  They mirror the scalar definitions in
:mod:`robust_ttest.statistics` expression-for-expression so that a batch
row and the scalar call produce bitwise-identical values (asserted in the
test suite for the robust statistics).

Zero-scale rows are not special-cased here: the division yields inf/nan
and the engine detects them with isfinite and redraws.
"""

import numba as nb
import numpy as np


@nb.njit(cache=True, nogil=True)
def _middle(v):
    """Median of a buffer: middle order statistic, or the mean of the two
    middle ones for even length."""
    m = v.shape[0]
    if m % 2 == 1:
        return np.partition(v, m // 2)[m // 2]
    w = np.partition(v, m // 2 - 1)
    return 0.5 * (w[m // 2 - 1] + np.min(w[m // 2 :]))


@nb.njit(cache=True, nogil=True)
def _kth(v, k):
    """k-th smallest (1-based) of a buffer."""
    return np.partition(v, k - 1)[k - 1]


@nb.njit(cache=True, nogil=True)
def ta_batch(X, mu, scale):
    B, n = X.shape
    out = np.empty(B)
    dev = np.empty(n)
    for b in range(B):
        xs = np.sort(X[b])
        if n % 2 == 1:
            med = xs[n // 2]
        else:
            med = 0.5 * (xs[n // 2 - 1] + xs[n // 2])
        for i in range(n):
            dev[i] = abs(xs[i] - med)
        madv = _middle(dev)
        out[b] = scale * (med - mu) / madv
    return out


@nb.njit(cache=True, nogil=True)
def tb_batch(X, mu, scale, inclusive):
    """Hodges-Lehmann / Shamos statistic per row.

    ``inclusive`` selects the pairwise index set for both medians:
    False -> i < j for Walsh averages and differences (the convention the
    reference tables reproduce), True -> i <= j for both, which adds the
    n singleton Walsh averages and the n zero differences.
    """
    B, n = X.shape
    out = np.empty(B)
    md = n * (n - 1) // 2
    mw = n * (n + 1) // 2 if inclusive else md
    wb = np.empty(mw)
    db = np.empty(md)
    off = 0 if inclusive else 1
    for b in range(B):
        xs = np.sort(X[b])
        k = 0
        for i in range(n):
            for j in range(i + off, n):
                wb[k] = 0.5 * (xs[i] + xs[j])
                k += 1
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                db[k] = xs[j] - xs[i]
                k += 1
        hl = _middle(wb)
        if inclusive:
            # Strict differences plus n zero diagonal terms; the zeros are
            # the smallest values, so ranks shift by n.
            m = md + n
            if m % 2 == 1:
                r = (m + 1) // 2
                sh = 0.0 if r <= n else _kth(db, r - n)
            else:
                r0 = m // 2
                v0 = 0.0 if r0 <= n else _kth(db, r0 - n)
                v1 = 0.0 if r0 + 1 <= n else _kth(db, r0 + 1 - n)
                sh = 0.5 * (v0 + v1)
        else:
            sh = _middle(db)
        out[b] = scale * (hl - mu) / sh
    return out


@nb.njit(cache=True, nogil=True)
def student_batch(X, mu):
    B, n = X.shape
    out = np.empty(B)
    rt_n = np.sqrt(n)
    for b in range(B):
        s = 0.0
        for i in range(n):
            s += X[b, i]
        mean = s / n
        ss = 0.0
        for i in range(n):
            d = X[b, i] - mean
            ss += d * d
        sd = np.sqrt(ss / (n - 1))
        out[b] = (mean - mu) / (sd / rt_n)
    return out
