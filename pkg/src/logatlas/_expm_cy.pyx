# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled matrix exponential backend.

Mirrors ``_expm_py.expm`` exactly (same scaling threshold, same stopping
rule); the only difference is that the small-matrix products run as plain
C loops, which beats BLAS dispatch overhead at the orders this package
works with (n <= 16).
"""

import numpy as np

from libc.math cimport ceil, fabs, log2

DEF SCALE_THRESHOLD = 0.5
DEF MAX_TERMS = 60


cdef double _one_norm(double[:, ::1] a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double colsum, best = 0.0
    for j in range(n):
        colsum = 0.0
        for i in range(n):
            colsum += fabs(a[i, j])
        if colsum > best:
            best = colsum
    return best


cdef void _matmul(double[:, ::1] x, double[:, ::1] y,
                  double[:, ::1] out, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double acc
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for k in range(n):
                acc += x[i, k] * y[k, j]
            out[i, j] = acc


def expm(double[:, ::1] a, double tol):
    """Exponential of a square float64 array by scaled Taylor summation."""
    cdef Py_ssize_t n = a.shape[0]
    cdef double nrm = _one_norm(a, n)
    cdef int s = 0
    if nrm > SCALE_THRESHOLD:
        s = <int>ceil(log2(nrm / SCALE_THRESHOLD))
    scaled_arr = np.divide(np.asarray(a), 2.0**s)
    acc_arr = np.eye(n) + scaled_arr
    term_arr = scaled_arr.copy()
    work_arr = np.empty((n, n))

    cdef double[:, ::1] b = scaled_arr
    cdef double[:, ::1] acc = acc_arr
    cdef double[:, ::1] term = term_arr
    cdef double[:, ::1] work = work_arr
    cdef double[:, ::1] swap
    cdef Py_ssize_t i, j
    cdef int k = 2
    cdef double inv_k

    with nogil:
        while k <= MAX_TERMS:
            _matmul(term, b, work, n)
            inv_k = 1.0 / k
            for i in range(n):
                for j in range(n):
                    work[i, j] *= inv_k
                    acc[i, j] += work[i, j]
            swap = term
            term = work
            work = swap
            if _one_norm(term, n) <= 0.5 * tol * _one_norm(acc, n):
                break
            k += 1
        while s > 0:
            _matmul(acc, acc, work, n)
            swap = acc
            acc = work
            work = swap
            s -= 1

    return np.asarray(acc).copy()
