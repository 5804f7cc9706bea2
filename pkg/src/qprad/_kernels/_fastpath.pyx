# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: fixed-step RK4 for the quasiparticle rate
equation and the exact signed-rank null distribution. Semantics match
``qprad._kernels.pure``.
"""

import numpy as np

from libc.math cimport ceil

cimport numpy as cnp

cnp.import_array()


def rk4_constant_g(double x0, double r, double s, double g,
                   cnp.ndarray[cnp.float64_t, ndim=1] t_grid, double h_max):
    cdef Py_ssize_t n = t_grid.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef double x = x0, span, h, k1, k2, k3, k4, x2, x3, x4
    cdef Py_ssize_t i, j, nsub
    out[0] = x
    for i in range(1, n):
        span = t_grid[i] - t_grid[i - 1]
        if span > 0:
            nsub = <Py_ssize_t>ceil(span / h_max)
            if nsub < 1:
                nsub = 1
        else:
            nsub = 1
        h = span / nsub
        for j in range(nsub):
            k1 = -r * x * x - s * x + g
            x2 = x + 0.5 * h * k1
            k2 = -r * x2 * x2 - s * x2 + g
            x3 = x + 0.5 * h * k2
            k3 = -r * x3 * x3 - s * x3 + g
            x4 = x + h * k3
            k4 = -r * x4 * x4 - s * x4 + g
            x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i] = x
    return out


def signed_rank_counts(cnp.ndarray[cnp.int64_t, ndim=1] doubled_ranks):
    cdef Py_ssize_t n = doubled_ranks.shape[0]
    cdef long long total = 0
    cdef Py_ssize_t i, k
    cdef long long w, upper = 0
    for i in range(n):
        total += doubled_ranks[i]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] counts = np.zeros(total + 1)
    cdef double[:] c = counts
    counts[0] = 1.0
    for i in range(n):
        w = doubled_ranks[i]
        upper += w
        for k in range(upper, w - 1, -1):
            c[k] += c[k - w]
    return counts
