# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; see ``_kernels_py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport M_PI, cos, sin, tan, log, fabs, ceil, log2

cnp.import_array()


cdef inline double _clenshaw_row(const double[:, ::1] c, Py_ssize_t r, double x) noexcept nogil:
    cdef Py_ssize_t n = c.shape[1], j
    cdef double b1 = 0.0, b2 = 0.0, tmp, x2 = 2.0 * x
    for j in range(n - 1, 0, -1):
        tmp = c[r, j] + x2 * b1 - b2
        b2 = b1
        b1 = tmp
    return c[r, 0] + x * b1 - b2


def clenshaw(coeffs, rows, x):
    cdef const double[:, ::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef const cnp.int64_t[::1] rr = np.ascontiguousarray(rows, dtype=np.int64)
    cdef const double[::1] xx = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty(xx.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(xx.shape[0]):
            o[i] = _clenshaw_row(c, rr[i], xx[i])
    return out


def bisect_roots(coeffs, rows, lo, hi, double xtol):
    cdef const double[:, ::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef const cnp.int64_t[::1] rr = np.ascontiguousarray(rows, dtype=np.int64)
    a_arr = np.array(lo, dtype=np.float64)
    b_arr = np.array(hi, dtype=np.float64)
    cdef double[::1] a = a_arr
    cdef double[::1] b = b_arr
    out = np.empty(a.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, it, iters
    cdef double fa, fm, mid, width = 0.0
    for i in range(a.shape[0]):
        if b[i] - a[i] > width:
            width = b[i] - a[i]
    iters = <Py_ssize_t>ceil(log2(width / xtol)) if width > xtol else 0
    with nogil:
        for i in range(a.shape[0]):
            fa = _clenshaw_row(c, rr[i], a[i])
            for it in range(iters):
                mid = 0.5 * (a[i] + b[i])
                fm = _clenshaw_row(c, rr[i], mid)
                if fm != 0.0 and ((fm < 0.0) == (fa < 0.0)):
                    a[i] = mid
                    fa = fm
                else:
                    b[i] = mid
            o[i] = 0.5 * (a[i] + b[i])
    return out


def remainder_log_sums(values, xg, wg, root_ptr, roots):
    cdef const double[:, ::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef const double[::1] x = np.ascontiguousarray(xg, dtype=np.float64)
    cdef const double[::1] w = np.ascontiguousarray(wg, dtype=np.float64)
    cdef const cnp.int64_t[::1] ptr = np.ascontiguousarray(root_ptr, dtype=np.int64)
    cdef const double[::1] r = np.ascontiguousarray(roots, dtype=np.float64)
    out = np.empty(v.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t b, j, i
    cdef double acc, term
    with nogil:
        for b in range(v.shape[0]):
            acc = 0.0
            for j in range(v.shape[1]):
                term = log(fabs(v[b, j]))
                for i in range(ptr[b], ptr[b + 1]):
                    term -= log(fabs(x[j] - r[i]))
                acc += w[j] * term
            o[b] = acc
    return out


def cot_sums(chi, k, t, int order):
    cdef const double[::1] ch = np.ascontiguousarray(chi, dtype=np.float64)
    cdef const cnp.int64_t[::1] kk = np.ascontiguousarray(k, dtype=np.int64)
    cdef const double[::1] tt = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t p = ch.shape[0], h = (p - 1) // 2
    out = np.empty(kk.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, m, idx
    cdef double acc, u, s, scale = M_PI / p
    with nogil:
        for i in range(kk.shape[0]):
            acc = 0.0
            for m in range(-h, h + 1):
                idx = (kk[i] + m) % p
                if idx < 0:
                    idx += p
                if ch[idx] == 0.0:
                    continue
                u = scale * (m - tt[i])
                if order == 0:
                    acc -= ch[idx] / tan(u)
                elif order == 1:
                    s = sin(u)
                    acc -= ch[idx] / (s * s)
                else:
                    s = sin(u)
                    acc -= ch[idx] * cos(u) / (s * s * s)
            if order == 0:
                o[i] = scale * acc
            elif order == 1:
                o[i] = scale * scale * acc
            else:
                o[i] = 2.0 * scale * scale * scale * acc
    return out


def harmonic_sums(signs, rows, t, int order):
    cdef const double[:, ::1] e = np.ascontiguousarray(signs, dtype=np.float64)
    cdef const cnp.int64_t[::1] rr = np.ascontiguousarray(rows, dtype=np.int64)
    cdef const double[::1] tt = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t width = e.shape[1], J = (width - 1) // 2
    out = np.empty(rr.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, j
    cdef double acc, d
    with nogil:
        for i in range(rr.shape[0]):
            acc = 0.0
            for j in range(width):
                d = (j - J) - tt[i]
                if order == 0:
                    acc += e[rr[i], j] / d
                elif order == 1:
                    acc += e[rr[i], j] / (d * d)
                else:
                    acc += e[rr[i], j] / (d * d * d)
            o[i] = 2.0 * acc if order == 2 else acc
    return out
