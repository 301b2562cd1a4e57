# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Contracts and operation order mirror ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, INFINITY

cnp.import_array()

cdef double SEP_EPS = 1e-8

WARD = 0
AVERAGE = 1


cdef inline double _sep(double n, double sx, double sxx, double sy,
                        double sxy, double syy) noexcept nogil:
    cdef double den = n * sxx - sx * sx
    cdef double slope, intercept, sse, mean
    if den == 0.0:
        slope = 0.0
    else:
        slope = (n * sxy - sx * sy) / den
    intercept = (sy - slope * sx) / n
    sse = syy - intercept * sy - slope * sxy
    if sse < 0.0:
        sse = 0.0
    mean = fabs(sy / n)
    if mean < SEP_EPS:
        mean = SEP_EPS
    return sqrt(sse) / mean


def segment_linear(values, double sep_max, Py_ssize_t min_len):
    cdef const double[::1] y = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n_total = y.shape[0]
    if n_total < min_len:
        return np.array([[0, n_total - 1]], dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.empty((n_total, 2), dtype=np.int64)
    cdef Py_ssize_t m = 0, start = 0, j = 1
    cdef double n = 1.0, sx = 0.0, sxx = 0.0
    cdef double sy = y[0], sxy = 0.0, syy = y[0] * y[0]
    cdef double x, v, u
    with nogil:
        while j < n_total:
            x = <double>(j - start)
            v = y[j]
            n += 1.0
            sx += x
            sxx += x * x
            sy += v
            sxy += x * v
            syy += v * v
            if j - start + 1 >= min_len and _sep(n, sx, sxx, sy, sxy, syy) > sep_max:
                out[m, 0] = start
                out[m, 1] = j - 1
                m += 1
                start = j - 1
                u = y[start]
                n = 2.0
                sx = 1.0
                sxx = 1.0
                sy = u + v
                sxy = v
                syy = u * u + v * v
            j += 1
    out[m, 0] = start
    out[m, 1] = n_total - 1
    m += 1
    return out[:m].copy()


cdef void _row_min(double[:, ::1] d, const unsigned char[::1] active, Py_ssize_t i,
                   Py_ssize_t n, Py_ssize_t* nn, double* nnd) noexcept nogil:
    cdef Py_ssize_t j, best_j = -1
    cdef double best = INFINITY
    for j in range(i + 1, n):
        if active[j] and d[i, j] < best:
            best = d[i, j]
            best_j = j
    nn[i] = best_j
    nnd[i] = best


def agglomerate(dist, int method=WARD):
    cdef double[:, ::1] d = np.array(dist, dtype=np.float64, copy=True, order="C")
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t steps = n - 1 if n > 1 else 0
    merges_arr = np.zeros((steps, 2), dtype=np.int64)
    heights_arr = np.zeros(steps, dtype=np.float64)
    if n < 2:
        return merges_arr, heights_arr
    cdef cnp.int64_t[:, ::1] merges = merges_arr
    cdef double[::1] heights = heights_arr
    cdef double[::1] sizes = np.ones(n, dtype=np.float64)
    cdef unsigned char[::1] active = np.ones(n, dtype=np.uint8)
    nn_arr = np.empty(n, dtype=np.intp)
    nnd_arr = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t[::1] nn = nn_arr
    cdef double[::1] nnd = nnd_arr
    cdef Py_ssize_t i, k, step, a, b
    cdef double best, h, na, nb, nk, dka, dkb, new
    with nogil:
        for i in range(n):
            _row_min(d, active, i, n, &nn[0], &nnd[0])
        for step in range(n - 1):
            a = -1
            best = INFINITY
            for i in range(n):
                if active[i] and nn[i] >= 0 and nnd[i] < best:
                    best = nnd[i]
                    a = i
            b = nn[a]
            h = d[a, b]
            merges[step, 0] = a
            merges[step, 1] = b
            heights[step] = h
            na = sizes[a]
            nb = sizes[b]
            for k in range(n):
                if not active[k] or k == a or k == b:
                    continue
                dka = d[k, a]
                dkb = d[k, b]
                if method == 0:
                    nk = sizes[k]
                    new = ((na + nk) * dka + (nb + nk) * dkb - nk * h) / (na + nb + nk)
                else:
                    new = (na * dka + nb * dkb) / (na + nb)
                d[k, a] = new
                d[a, k] = new
            sizes[a] = na + nb
            active[b] = 0
            for i in range(n):
                if not active[i]:
                    continue
                if i == a or nn[i] == a or nn[i] == b:
                    _row_min(d, active, i, n, &nn[0], &nnd[0])
                elif i < a and (d[i, a] < nnd[i] or (d[i, a] == nnd[i] and a < nn[i])):
                    nn[i] = a
                    nnd[i] = d[i, a]
    return merges_arr, heights_arr


cdef double _dtw(const double[::1] x, const double[::1] y, Py_ssize_t band,
                 double* prev, double* cur) noexcept nogil:
    cdef Py_ssize_t n = x.shape[0], m = y.shape[0]
    cdef Py_ssize_t i, j, lo, hi
    cdef double xi, diff, best
    cdef double* tmp
    for j in range(m + 1):
        prev[j] = INFINITY
    prev[0] = 0.0
    for i in range(1, n + 1):
        for j in range(m + 1):
            cur[j] = INFINITY
        if band < 0:
            lo = 1
            hi = m
        else:
            lo = i - band if i - band > 1 else 1
            hi = i + band if i + band < m else m
        xi = x[i - 1]
        for j in range(lo, hi + 1):
            diff = xi - y[j - 1]
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if cur[j - 1] < best:
                best = cur[j - 1]
            cur[j] = diff * diff + best
        tmp = prev
        prev = cur
        cur = tmp
    return sqrt(prev[m])


def dtw(x, y, Py_ssize_t band=-1):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef double[::1] buf = np.empty(2 * (yv.shape[0] + 1), dtype=np.float64)
    cdef double res
    with nogil:
        res = _dtw(xv, yv, band, &buf[0], &buf[yv.shape[0] + 1])
    return res


def dtw_matrix(series, Py_ssize_t band=-1):
    arrays = [np.ascontiguousarray(s, dtype=np.float64) for s in series]
    cdef Py_ssize_t t = len(arrays)
    out_arr = np.zeros((t, t), dtype=np.float64)
    if t < 2:
        return out_arr
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t longest = max(a.shape[0] for a in arrays)
    cdef double[::1] buf = np.empty(2 * (longest + 1), dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef const double[::1] xv
    cdef const double[::1] yv
    cdef double res
    for i in range(t):
        xv = arrays[i]
        for j in range(i + 1, t):
            yv = arrays[j]
            with nogil:
                res = _dtw(xv, yv, band, &buf[0], &buf[yv.shape[0] + 1])
            out[i, j] = res
            out[j, i] = res
    return out_arr
