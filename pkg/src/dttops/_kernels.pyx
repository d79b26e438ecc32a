# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for row-compressed operator application.

Same storage layout and entry points as _kernels_py: (n, capacity) index and
value arrays with zero-padded unused slots, plus a per-row count.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

NAME = "cython"


cdef void _matvec_into(const long[:, ::1] indices, const double[:, ::1] values,
                       const int[::1] counts, const double[::1] x,
                       double[::1] out) noexcept nogil:
    cdef Py_ssize_t r, c, n = indices.shape[0]
    cdef int m
    cdef double acc
    for r in range(n):
        acc = 0.0
        m = counts[r]
        for c in range(m):
            acc += values[r, c] * x[indices[r, c]]
        out[r] = acc


def matvec(const long[:, ::1] indices, const double[:, ::1] values,
           const int[::1] counts, const double[::1] x):
    out = np.empty(indices.shape[0], dtype=np.float64)
    cdef double[::1] out_v = out
    with nogil:
        _matvec_into(indices, values, counts, x, out_v)
    return out


def pgf_apply(const long[:, ::1] indices, const double[:, ::1] values,
              const int[::1] counts, const double[::1] coeffs,
              const double[::1] x):
    cdef Py_ssize_t n = indices.shape[0]
    cdef Py_ssize_t k = coeffs.shape[0] - 1
    cdef Py_ssize_t i, r
    t = np.empty(n, dtype=np.float64)
    buf = np.empty(n, dtype=np.float64)
    cdef double[::1] t_v = t
    cdef double[::1] buf_v = buf
    cdef double g
    with nogil:
        g = coeffs[k]
        for r in range(n):
            t_v[r] = g * x[r]
        for i in range(1, k + 1):
            _matvec_into(indices, values, counts, t_v, buf_v)
            g = coeffs[k - i]
            for r in range(n):
                t_v[r] = buf_v[r] + g * x[r]
    return t


def cheb_apply(const long[:, ::1] indices, const double[:, ::1] values,
               const int[::1] counts, const double[::1] coeffs,
               double scale, const double[::1] x):
    cdef Py_ssize_t n = indices.shape[0]
    cdef Py_ssize_t deg = coeffs.shape[0] - 1
    cdef Py_ssize_t r, k
    y = np.empty(n, dtype=np.float64)
    cdef double[::1] y_v = y
    t_prev = np.empty(n, dtype=np.float64)
    t_cur = np.empty(n, dtype=np.float64)
    buf = np.empty(n, dtype=np.float64)
    cdef double[::1] tp = t_prev
    cdef double[::1] tc = t_cur
    cdef double[::1] bf = buf
    cdef double c, tmp
    with nogil:
        c = coeffs[0]
        for r in range(n):
            y_v[r] = c * x[r]
        if deg >= 1:
            _matvec_into(indices, values, counts, x, bf)
            c = coeffs[1]
            for r in range(n):
                tp[r] = x[r]
                tc[r] = scale * bf[r] - x[r]
                y_v[r] += c * tc[r]
            for k in range(2, deg + 1):
                _matvec_into(indices, values, counts, tc, bf)
                c = coeffs[k]
                for r in range(n):
                    tmp = 2.0 * (scale * bf[r] - tc[r]) - tp[r]
                    tp[r] = tc[r]
                    tc[r] = tmp
                    y_v[r] += c * tmp
    return y


def quad_form(const long[:, ::1] indices, const double[:, ::1] values,
              const int[::1] counts, const double[::1] x):
    cdef Py_ssize_t r, c, n = indices.shape[0]
    cdef int m
    cdef double acc, total = 0.0
    with nogil:
        for r in range(n):
            acc = 0.0
            m = counts[r]
            for c in range(m):
                acc += values[r, c] * x[indices[r, c]]
            total += x[r] * acc
    return total
