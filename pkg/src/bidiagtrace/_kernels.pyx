# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled table kernels.

Same signatures and operation order as ``_kernels_py``; compiled with
``-ffp-contract=off`` so no fused multiply-add changes the rounding.
"""

import numpy as np

from libc.math cimport isfinite, INFINITY


cdef bint _row_finite(double[:, ::1] a, Py_ssize_t r, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(n):
        if not isfinite(a[r, i]):
            return False
    return True


cdef void _fill_inf(double[:, ::1] a, Py_ssize_t start, Py_ssize_t m, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t r, i
    for r in range(start, m):
        for i in range(n):
            a[r, i] = INFINITY


def first_order(const double[::1] q, const double[::1] e):
    cdef Py_ssize_t n = q.shape[0]
    cdef Py_ssize_t i
    v_arr = np.empty(n)
    w_arr = np.empty(n)
    cdef double[::1] v = v_arr
    cdef double[::1] w = w_arr
    with nogil:
        v[n - 1] = 1.0 / q[n - 1]
        for i in range(n - 2, -1, -1):
            v[i] = (e[i] * v[i + 1] + 1.0) / q[i]
        w[0] = 1.0 / q[0]
        for i in range(1, n):
            w[i] = (e[i - 1] * w[i - 1] + 1.0) / q[i]
    return v_arr, w_arr


def kyn11(const double[::1] q, const double[::1] e, Py_ssize_t m, bint backward):
    cdef Py_ssize_t n = q.shape[0]
    cdef Py_ssize_t p, i
    v_arr = np.zeros((m + 1, n))
    w_arr = np.zeros((m + 1, n))
    z_arr = np.zeros((m, n))
    cdef double[:, ::1] v = v_arr
    cdef double[:, ::1] w = w_arr
    cdef double[:, ::1] z = z_arr
    with nogil:
        for i in range(n):
            v[0, i] = 1.0
            w[0, i] = 1.0
        for p in range(1, m + 1):
            if backward:
                z[p - 1, n - 1] = 2.0 * w[p - 1, n - 1]
                for i in range(n - 2, -1, -1):
                    z[p - 1, i] = z[p - 1, i + 1] + 2.0 * (w[p - 1, i] - v[p - 1, i + 1])
            else:
                z[p - 1, 0] = 2.0 * v[p - 1, 0]
                for i in range(1, n):
                    z[p - 1, i] = z[p - 1, i - 1] + 2.0 * (v[p - 1, i] - w[p - 1, i - 1])
            v[p, n - 1] = w[p - 1, n - 1] / q[n - 1]
            for i in range(n - 2, -1, -1):
                v[p, i] = (e[i] * v[p, i + 1] + (z[p - 1, i] - w[p - 1, i])) / q[i]
            w[p, 0] = v[p - 1, 0] / q[0]
            for i in range(1, n):
                w[p, i] = (e[i - 1] * w[p, i - 1] + (z[p - 1, i] - v[p - 1, i])) / q[i]
    return v_arr, w_arr, z_arr


def ykn12(const double[::1] bc, const double[::1] f, const double[::1] ft, Py_ssize_t m):
    cdef Py_ssize_t n = bc.shape[0]
    cdef Py_ssize_t i, r, s, k
    cdef double acc, conv
    v_arr = np.zeros((m + 1, n))
    w_arr = np.zeros((m + 1, n))
    g_arr = np.zeros((m, n))
    gt_arr = np.zeros((m, n))
    cdef double[:, ::1] v = v_arr
    cdef double[:, ::1] w = w_arr
    cdef double[:, ::1] g = g_arr
    cdef double[:, ::1] gt = gt_arr
    with nogil:
        for i in range(n):
            v[0, i] = 1.0
            w[0, i] = 1.0
        v[1, n - 1] = bc[n - 1]
        for i in range(n - 2, -1, -1):
            g[0, i] = f[i] * v[1, i + 1]
            v[1, i] = g[0, i] + bc[i]
        w[1, 0] = bc[0]
        for i in range(1, n):
            gt[0, i] = ft[i - 1] * w[1, i - 1]
            w[1, i] = gt[0, i] + bc[i]

        for r in range(2, m + 1):
            for i in range(n - 2, -1, -1):
                acc = f[i] * g[r - 1, i + 1] + bc[i + 1] * g[r - 2, i]
                for k in range(1, r):
                    acc += g[k - 1, i + 1] * g[r - k - 1, i]
                g[r - 1, i] = acc
            for i in range(1, n):
                acc = ft[i - 1] * gt[r - 1, i - 1] + bc[i - 1] * gt[r - 2, i]
                for k in range(1, r):
                    acc += gt[k - 1, i - 1] * gt[r - k - 1, i]
                gt[r - 1, i] = acc

        for s in range(2, m + 1):
            v[s, n - 1] = bc[n - 1] * w[s - 1, n - 1]
            for i in range(n - 2, -1, -1):
                conv = 0.0
                for k in range(1, s):
                    conv += g[k - 1, i] * w[s - k, i]
                v[s, i] = f[i] * v[s, i + 1] + bc[i] * w[s - 1, i] + 2.0 * conv
            w[s, 0] = bc[0] * v[s - 1, 0]
            for i in range(1, n):
                conv = 0.0
                for k in range(1, s):
                    conv += gt[k - 1, i] * v[s - k, i]
                w[s, i] = ft[i - 1] * w[s, i - 1] + bc[i] * v[s - 1, i] + 2.0 * conv
    return v_arr, w_arr, g_arr, gt_arr


def ykyy14(const double[::1] bc, const double[::1] f, const double[::1] ft, Py_ssize_t m,
           bint tilde, const double[:, ::1] binom, bint stop):
    cdef Py_ssize_t n = bc.shape[0]
    cdef Py_ssize_t i, p, k
    cdef double acc, fp
    h_arr = np.zeros((m, n))
    big_arr = np.zeros((m, n))
    cdef double[:, ::1] h = h_arr
    cdef double[:, ::1] big = big_arr
    with nogil:
        if tilde:
            h[0, n - 1] = bc[n - 1]
            for i in range(n - 2, -1, -1):
                h[0, i] = f[i] * h[0, i + 1] + bc[i]
        else:
            h[0, 0] = bc[0]
            for i in range(1, n):
                h[0, i] = ft[i - 1] * h[0, i - 1] + bc[i]
        for i in range(n):
            big[0, i] = h[0, i]
        if stop and not _row_finite(big, 0, n):
            _fill_inf(big, 1, m, n)
            _fill_inf(h, 1, m, n)
            m = 1
        for p in range(2, m + 1):
            fp = <double>p
            if tilde:
                for i in range(n - 2, -1, -1):
                    acc = f[i] * (h[p - 1, i + 1] + fp * h[0, i + 1] * h[p - 2, i + 1])
                    for k in range(1, p - 1):
                        acc += binom[p, k] * h[k - 1, i + 1] * h[p - k - 1, i]
                    h[p - 1, i] = acc
            else:
                for i in range(1, n):
                    acc = ft[i - 1] * (h[p - 1, i - 1] + fp * h[0, i - 1] * h[p - 2, i - 1])
                    for k in range(1, p - 1):
                        acc += binom[p, k] * h[k - 1, i - 1] * h[p - k - 1, i]
                    h[p - 1, i] = acc
            for i in range(n):
                acc = h[p - 1, i]
                for k in range(1, p):
                    acc += binom[p - 1, k] * h[k - 1, i] * big[p - k - 1, i]
                big[p - 1, i] = acc
            if stop and not _row_finite(big, p - 1, n):
                _fill_inf(big, p, m, n)
                _fill_inf(h, p, m, n)
                break
    return h_arr, big_arr


def unified(const double[::1] bc, const double[::1] f, const double[::1] ft, Py_ssize_t m,
            bint plain, bint stop):
    cdef Py_ssize_t n = bc.shape[0]
    cdef Py_ssize_t i, mm, k
    cdef double acc, fm
    sm_arr = np.zeros((m, n))
    big_arr = np.zeros((m, n))
    cdef double[:, ::1] sm = sm_arr
    cdef double[:, ::1] big = big_arr
    with nogil:
        if plain:
            big[0, n - 1] = bc[n - 1]
            for i in range(n - 2, -1, -1):
                sm[0, i] = f[i] * big[0, i + 1]
                big[0, i] = sm[0, i] + bc[i]
        else:
            big[0, 0] = bc[0]
            for i in range(1, n):
                sm[0, i] = ft[i - 1] * big[0, i - 1]
                big[0, i] = sm[0, i] + bc[i]
        if stop and not _row_finite(big, 0, n):
            _fill_inf(big, 1, m, n)
            _fill_inf(sm, 1, m, n)
            m = 1
        for mm in range(2, m + 1):
            if plain:
                for i in range(n - 2, -1, -1):
                    acc = f[i] * sm[mm - 1, i + 1] + big[0, i + 1] * sm[mm - 2, i]
                    for k in range(2, mm):
                        acc += sm[k - 1, i + 1] * sm[mm - k - 1, i]
                    sm[mm - 1, i] = acc
            else:
                for i in range(1, n):
                    acc = ft[i - 1] * sm[mm - 1, i - 1] + big[0, i - 1] * sm[mm - 2, i]
                    for k in range(2, mm):
                        acc += sm[k - 1, i - 1] * sm[mm - k - 1, i]
                    sm[mm - 1, i] = acc
            fm = <double>mm
            for i in range(n):
                acc = fm * sm[mm - 1, i] + big[0, i] * big[mm - 2, i]
                for k in range(2, mm):
                    acc += sm[k - 1, i] * big[mm - k - 1, i]
                big[mm - 1, i] = acc
            if stop and not _row_finite(big, mm - 1, n):
                _fill_inf(big, mm, m, n)
                _fill_inf(sm, mm, m, n)
                break
    return sm_arr, big_arr
