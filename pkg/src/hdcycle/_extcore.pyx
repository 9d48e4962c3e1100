# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels for the 4x4 linear-algebra hot path.

The grid certifier evaluates the third-exterior-power conorm at millions of
points; these kernels keep that loop allocation-free.  A pure-numpy fallback
with the same signatures lives in ``hdcycle._kernels``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


cdef inline double _det3(const double* m, int r0, int r1, int r2,
                         int c0, int c1, int c2) noexcept nogil:
    cdef double a = m[4*r0 + c0], b = m[4*r0 + c1], c = m[4*r0 + c2]
    cdef double d = m[4*r1 + c0], e = m[4*r1 + c1], f = m[4*r1 + c2]
    cdef double g = m[4*r2 + c0], h = m[4*r2 + c1], i = m[4*r2 + c2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


# ordered basis of 3-vectors: (012, 013, 023, 123)
cdef int SUB[4][3]
SUB[0][0], SUB[0][1], SUB[0][2] = 0, 1, 2
SUB[1][0], SUB[1][1], SUB[1][2] = 0, 1, 3
SUB[2][0], SUB[2][1], SUB[2][2] = 0, 2, 3
SUB[3][0], SUB[3][1], SUB[3][2] = 1, 2, 3


cdef inline void _wedge3_one(const double* m, double* w) noexcept nogil:
    cdef int i, j
    for i in range(4):
        for j in range(4):
            w[4*i + j] = _det3(m, SUB[i][0], SUB[i][1], SUB[i][2],
                               SUB[j][0], SUB[j][1], SUB[j][2])


cdef inline double _smallest_sv(const double* m) noexcept nogil:
    # one-sided Jacobi (Hestenes): orthogonalize columns, singular values are
    # the resulting column norms
    cdef double a[16]
    cdef int i, j, k, sweep
    cdef double app, aqq, apq, tau, t, c, s, tmp, off, scale
    for i in range(16):
        a[i] = m[i]
    for sweep in range(40):
        off = 0.0
        for i in range(3):
            for j in range(i + 1, 4):
                app = 0.0
                aqq = 0.0
                apq = 0.0
                for k in range(4):
                    app += a[4*k + i] * a[4*k + i]
                    aqq += a[4*k + j] * a[4*k + j]
                    apq += a[4*k + i] * a[4*k + j]
                scale = sqrt(app * aqq)
                if scale <= 0.0 or fabs(apq) <= 1e-15 * scale:
                    continue
                off += fabs(apq) / scale
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(4):
                    tmp = a[4*k + i]
                    a[4*k + i] = c * tmp - s * a[4*k + j]
                    a[4*k + j] = s * tmp + c * a[4*k + j]
        if off == 0.0:
            break
    cdef double best = -1.0
    cdef double nrm
    for j in range(4):
        nrm = 0.0
        for k in range(4):
            nrm += a[4*k + j] * a[4*k + j]
        nrm = sqrt(nrm)
        if best < 0.0 or nrm < best:
            best = nrm
    return best


def wedge3_many(cnp.ndarray[double, ndim=3, mode="c"] mats):
    """Third-exterior-power matrices of a (n, 4, 4) batch."""
    cdef Py_ssize_t n = mats.shape[0]
    if mats.shape[1] != 4 or mats.shape[2] != 4:
        raise ValueError("expected (n, 4, 4) batch")
    cdef cnp.ndarray[double, ndim=3, mode="c"] out = np.empty((n, 4, 4))
    cdef Py_ssize_t i
    cdef const double* src = <const double*> mats.data
    cdef double* dst = <double*> out.data
    with nogil:
        for i in range(n):
            _wedge3_one(src + 16*i, dst + 16*i)
    return out


def conorm_many(cnp.ndarray[double, ndim=3, mode="c"] mats):
    """Smallest singular value of each matrix in a (n, 4, 4) batch."""
    cdef Py_ssize_t n = mats.shape[0]
    if mats.shape[1] != 4 or mats.shape[2] != 4:
        raise ValueError("expected (n, 4, 4) batch")
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n)
    cdef Py_ssize_t i
    cdef const double* src = <const double*> mats.data
    cdef double* dst = <double*> out.data
    with nogil:
        for i in range(n):
            dst[i] = _smallest_sv(src + 16*i)
    return out


def conorm_wedge3_many(cnp.ndarray[double, ndim=3, mode="c"] mats):
    """Fused smallest singular value of the third exterior power."""
    cdef Py_ssize_t n = mats.shape[0]
    if mats.shape[1] != 4 or mats.shape[2] != 4:
        raise ValueError("expected (n, 4, 4) batch")
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n)
    cdef Py_ssize_t i
    cdef double w[16]
    cdef const double* src = <const double*> mats.data
    cdef double* dst = <double*> out.data
    with nogil:
        for i in range(n):
            _wedge3_one(src + 16*i, w)
            dst[i] = _smallest_sv(w)
    return out
