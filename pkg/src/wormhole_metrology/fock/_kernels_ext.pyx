# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Fock-space kernels; see ``_kernels_py`` for the reference versions."""
import numpy as np

cimport numpy as cnp
from libc.math cimport cosh, exp, fabs, sinh, sqrt, tanh, M_PI, pow

cnp.import_array()

cdef double RESCALE_AT = 1e150


def squeezed_vacuum(double r, Py_ssize_t dim):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(dim)
    cdef double t = -tanh(r)
    cdef Py_ssize_t n
    out[0] = 1.0 / sqrt(cosh(r))
    for n in range(2, dim, 2):
        out[n] = out[n - 2] * t * sqrt(<double>(n - 1) / n)
    return out


def displaced_squeezed(double alpha, double r, Py_ssize_t dim):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(dim)
    cdef double[::1] ov = out
    cdef double ch = cosh(r), sh = sinh(r)
    cdef double gamma = alpha * (ch + sh)
    cdef Py_ssize_t n, k
    ov[0] = 1.0
    if dim > 1:
        ov[1] = gamma / ch
    for n in range(1, dim - 1):
        ov[n + 1] = (gamma * ov[n] - sh * sqrt(<double>n) * ov[n - 1]) / (ch * sqrt(<double>(n + 1)))
        if fabs(ov[n + 1]) > RESCALE_AT:
            for k in range(n + 2):
                ov[k] /= RESCALE_AT
    return out


cdef _recurrence_coefficients(Py_ssize_t nmax):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] coef = np.empty((2, max(nmax, 1)))
    cdef Py_ssize_t n
    for n in range(nmax):
        coef[0, n] = sqrt(2.0 / (n + 1))
        coef[1, n] = sqrt(<double>n / (n + 1))
    return coef


def hermite_functions(x, Py_ssize_t nmax):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t npts = xv.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] table = np.empty((nmax, npts))
    cdef double[:, ::1] tv = table
    cdef double[:, ::1] coef = _recurrence_coefficients(nmax)
    cdef Py_ssize_t j, n
    cdef double a, b, norm = pow(M_PI, -0.25), s2 = sqrt(2.0)
    for j in range(npts):
        tv[0, j] = norm * exp(-0.5 * xv[j] * xv[j])
    if nmax > 1:
        for j in range(npts):
            tv[1, j] = s2 * xv[j] * tv[0, j]
    for n in range(1, nmax - 1):
        a = coef[0, n]
        b = coef[1, n]
        for j in range(npts):
            tv[n + 1, j] = a * xv[j] * tv[n, j] - b * tv[n - 1, j]
    return table


def wavefunction(coeffs, x):
    c = np.ascontiguousarray(coeffs, dtype=np.complex128).ravel()
    cdef const double[::1] cr = np.ascontiguousarray(c.real)
    cdef const double[::1] ci = np.ascontiguousarray(c.imag)
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t dim = cr.shape[0], npts = xv.shape[0]
    cdef double[:, ::1] coef = _recurrence_coefficients(dim)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t j, n
    cdef double xj, prev, cur, nxt, re, im, norm = pow(M_PI, -0.25), s2 = sqrt(2.0)
    for j in range(npts):
        xj = xv[j]
        prev = norm * exp(-0.5 * xj * xj)
        re = cr[0] * prev
        im = ci[0] * prev
        if dim > 1:
            cur = s2 * xj * prev
            re += cr[1] * cur
            im += ci[1] * cur
            for n in range(1, dim - 1):
                nxt = coef[0, n] * xj * cur - coef[1, n] * prev
                re += cr[n + 1] * nxt
                im += ci[n + 1] * nxt
                prev = cur
                cur = nxt
        ov[j] = re + 1j * im
    return out
