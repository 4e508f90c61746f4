# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled signal kernels.

Same contract as ``_kernels_py``: centered truncated moving mean, linear
interpolation over a strictly increasing time base, and sample Pearson
correlation.  Selected at import by ``_backend`` when built.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt, NAN

cnp.import_array()

BACKEND = "compiled"


def moving_mean_core(values, int window):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t half = window // 2
    cdef Py_ssize_t i, lo, hi
    cdef double acc = 0.0
    cdef Py_ssize_t cur_lo = 0, cur_hi = 0  # running half-open window [cur_lo, cur_hi)

    for i in range(n):
        lo = i - half
        if lo < 0:
            lo = 0
        hi = i + half + 1
        if hi > n:
            hi = n
        while cur_hi < hi:
            acc += v[cur_hi]
            cur_hi += 1
        while cur_lo < lo:
            acc -= v[cur_lo]
            cur_lo += 1
        out[i] = acc / (hi - lo)
    return out


def interp_core(t, v, tq):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tt = np.ascontiguousarray(t, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] qq = np.ascontiguousarray(tq, dtype=np.float64)
    cdef Py_ssize_t n = tt.shape[0]
    cdef Py_ssize_t m = qq.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef Py_ssize_t i, lo, hi, mid
    cdef double x, frac

    for i in range(m):
        x = qq[i]
        if x <= tt[0]:
            out[i] = vv[0]
            continue
        if x >= tt[n - 1]:
            out[i] = vv[n - 1]
            continue
        # binary search for the segment with tt[lo] <= x < tt[lo + 1]
        lo = 0
        hi = n - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if tt[mid] <= x:
                lo = mid
            else:
                hi = mid
        frac = (x - tt[lo]) / (tt[lo + 1] - tt[lo])
        out[i] = vv[lo] + frac * (vv[lo + 1] - vv[lo])
    return out


def pearson_core(a, b):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] aa = np.ascontiguousarray(a, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] bb = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t n = aa.shape[0]
    cdef Py_ssize_t i
    cdef double ma = 0.0, mb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0
    cdef double da, db, denom

    for i in range(n):
        ma += aa[i]
        mb += bb[i]
    ma /= n
    mb /= n
    for i in range(n):
        da = aa[i] - ma
        db = bb[i] - mb
        saa += da * da
        sbb += db * db
        sab += da * db
    denom = sqrt(saa * sbb)
    if denom == 0.0:
        return NAN
    return sab / denom
