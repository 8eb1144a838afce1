# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled decode sweeps; same contract as kernels_py."""

from libc.math cimport INFINITY, exp, log1p
from libc.stdint cimport int64_t

import numpy as np


def viterbi_forward(double[::1] acc, int64_t[::1] src, int64_t[::1] dst,
                    double[::1] wtab, int64_t[::1] lab, Py_ssize_t out_size):
    out_arr = np.full(out_size, INFINITY, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double w
    for i in range(src.shape[0]):
        w = acc[src[i]] + wtab[lab[i]]
        if w < out[dst[i]]:
            out[dst[i]] = w
    return out_arr


def viterbi_backward(double[::1] acc, int64_t[::1] src, int64_t[::1] dst,
                     double[::1] wtab, int64_t[::1] lab, Py_ssize_t in_size):
    out_arr = np.full(in_size, INFINITY, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double w
    for i in range(src.shape[0]):
        w = acc[dst[i]] + wtab[lab[i]]
        if w < out[src[i]]:
            out[src[i]] = w
    return out_arr


def sumprod_forward(double[::1] acc, int64_t[::1] src, int64_t[::1] dst,
                    double[::1] wtab, int64_t[::1] lab, Py_ssize_t out_size):
    out_arr = np.full(out_size, -INFINITY, dtype=np.float64)
    touched_arr = np.zeros(out_size, dtype=np.uint8)
    cdef double[::1] out = out_arr
    cdef unsigned char[::1] touched = touched_arr
    cdef Py_ssize_t i, d
    cdef int64_t mults = 0, adds = 0
    cdef double w, cur, hi, lo
    for i in range(src.shape[0]):
        w = acc[src[i]] + wtab[lab[i]]
        mults += 1
        d = dst[i]
        if not touched[d]:
            out[d] = w
            touched[d] = 1
        else:
            cur = out[d]
            if cur >= w:
                hi = cur; lo = w
            else:
                hi = w; lo = cur
            if lo - hi < -745.0:
                out[d] = hi
            else:
                out[d] = hi + log1p(exp(lo - hi))
            adds += 1
    return out_arr, mults, adds
