"""Pure-Python/numpy kernels.

Same contracts and the same floating-point operation order as the Cython
kernels in ``_ckernels.pyx``, so both backends return identical results.
"""
from __future__ import annotations

import math

import numpy as np

SEP_EPS = 1e-8

WARD = 0
AVERAGE = 1


def segment_linear(values, sep_max, min_len):
    """Greedy growing-window linear segmentation.

    Returns an ``(m, 2)`` int64 array of inclusive ``(start, end)`` bounds.
    Consecutive segments share their cut point.
    """
    y = [float(v) for v in np.asarray(values, dtype=np.float64)]
    n_total = len(y)
    if n_total < min_len:
        return np.array([[0, n_total - 1]], dtype=np.int64)
    bounds = []
    start = 0
    n = 1.0
    sx = 0.0
    sxx = 0.0
    sy = y[0]
    sxy = 0.0
    syy = y[0] * y[0]
    j = 1
    while j < n_total:
        x = float(j - start)
        v = y[j]
        n += 1.0
        sx += x
        sxx += x * x
        sy += v
        sxy += x * v
        syy += v * v
        if j - start + 1 >= min_len and _sep(n, sx, sxx, sy, sxy, syy) > sep_max:
            bounds.append((start, j - 1))
            start = j - 1
            u = y[start]
            n = 2.0
            sx = 1.0
            sxx = 1.0
            sy = u + v
            sxy = v
            syy = u * u + v * v
        j += 1
    bounds.append((start, n_total - 1))
    return np.array(bounds, dtype=np.int64)


def _sep(n, sx, sxx, sy, sxy, syy):
    den = n * sxx - sx * sx
    if den == 0.0:
        slope = 0.0
    else:
        slope = (n * sxy - sx * sy) / den
    intercept = (sy - slope * sx) / n
    sse = syy - intercept * sy - slope * sxy
    if sse < 0.0:
        sse = 0.0
    mean = abs(sy / n)
    if mean < SEP_EPS:
        mean = SEP_EPS
    return math.sqrt(sse) / mean


def agglomerate(dist, method=WARD):
    """Lance-Williams agglomeration over a square dissimilarity matrix.

    For Ward, ``dist`` holds squared Euclidean distances. Slots are merged
    pairwise: merging ``(a, b)`` with ``a < b`` keeps the union in slot ``a``.
    Among minimal pairs the lexicographically smallest ``(a, b)`` wins.

    Returns ``(merges, heights)``: an ``(n-1, 2)`` int64 array of slot pairs
    and the Lance-Williams value at each merge.
    """
    d = np.array(dist, dtype=np.float64, copy=True)
    n = d.shape[0]
    merges = np.zeros((max(n - 1, 0), 2), dtype=np.int64)
    heights = np.zeros(max(n - 1, 0), dtype=np.float64)
    if n < 2:
        return merges, heights
    sizes = np.ones(n, dtype=np.float64)
    active = np.ones(n, dtype=bool)
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    work = np.where(upper, d, np.inf)
    for step in range(n - 1):
        flat = int(np.argmin(work))
        a, b = divmod(flat, n)
        h = d[a, b]
        merges[step] = (a, b)
        heights[step] = h
        na = sizes[a]
        nb = sizes[b]
        others = np.flatnonzero(active)
        others = others[(others != a) & (others != b)]
        dka = d[others, a]
        dkb = d[others, b]
        if method == WARD:
            nk = sizes[others]
            new = ((na + nk) * dka + (nb + nk) * dkb - nk * h) / (na + nb + nk)
        else:
            new = (na * dka + nb * dkb) / (na + nb)
        d[others, a] = new
        d[a, others] = new
        sizes[a] = na + nb
        active[b] = False
        work[b, :] = np.inf
        work[:, b] = np.inf
        lo = others[others < a]
        hi = others[others > a]
        work[lo, a] = d[lo, a]
        work[a, hi] = d[a, hi]
    return merges, heights


def dtw(x, y, band=-1):
    """Squared-difference DTW, square-rooted at the end.

    ``band < 0`` means unconstrained; otherwise cells with ``|i - j| > band``
    are forbidden. Returns ``inf`` when no admissible path exists.
    """
    x = [float(v) for v in np.asarray(x, dtype=np.float64)]
    y = [float(v) for v in np.asarray(y, dtype=np.float64)]
    n = len(x)
    m = len(y)
    inf = math.inf
    prev = [inf] * (m + 1)
    prev[0] = 0.0
    for i in range(1, n + 1):
        cur = [inf] * (m + 1)
        if band < 0:
            lo, hi = 1, m
        else:
            lo, hi = max(1, i - band), min(m, i + band)
        xi = x[i - 1]
        for j in range(lo, hi + 1):
            diff = xi - y[j - 1]
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if cur[j - 1] < best:
                best = cur[j - 1]
            cur[j] = diff * diff + best
        prev = cur
    return math.sqrt(prev[m])


def dtw_matrix(series, band=-1):
    """Symmetric DTW matrix over a list of 1-D arrays."""
    series = [np.asarray(s, dtype=np.float64) for s in series]
    t = len(series)
    out = np.zeros((t, t), dtype=np.float64)
    if t < 2:
        return out
    lengths = {s.size for s in series}
    if len(lengths) == 1:
        ii, jj = np.triu_indices(t, k=1)
        stack = np.vstack(series)
        vals = _dtw_batch(stack[ii], stack[jj], band)
        out[ii, jj] = vals
        out[jj, ii] = vals
        return out
    for i in range(t):
        for j in range(i + 1, t):
            out[i, j] = out[j, i] = dtw(series[i], series[j], band)
    return out


def _dtw_batch(a, b, band):
    """DTW for many equal-length pairs at once, vectorised over pairs."""
    p, n = a.shape
    m = b.shape[1]
    prev = np.full((p, m + 1), np.inf)
    prev[:, 0] = 0.0
    for i in range(1, n + 1):
        cur = np.full((p, m + 1), np.inf)
        if band < 0:
            lo, hi = 1, m
        else:
            lo, hi = max(1, i - band), min(m, i + band)
        diff = a[:, i - 1 : i] - b
        cost = diff * diff
        for j in range(lo, hi + 1):
            best = np.minimum(np.minimum(prev[:, j - 1], prev[:, j]), cur[:, j - 1])
            cur[:, j] = cost[:, j - 1] + best
        prev = cur
    return np.sqrt(prev[:, m])
