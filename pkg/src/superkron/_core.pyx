# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the numerical hot kernels (see _kernels_py)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double cabs(double complex)

BACKEND = "cython"

DEF PI = 3.141592653589793


def theta_series(double complex z, double complex tau, int cutoff,
                 int max_dz, int max_dtau):
    """Odd theta series with term-wise derivatives; see _kernels_py.theta_series."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] vals = np.zeros(
        (max_dz + 1, max_dtau + 1), dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] tails = np.empty(
        (max_dz + 1, max_dtau + 1), dtype=np.float64)
    cdef double complex[:, :] v = vals
    cdef double[:, :] tl = tails
    cdef double half
    cdef double complex term, dz_fac, dt_fac, row, col
    cdef int k, j, s
    for k in range(-cutoff, cutoff):
        half = k + 0.5
        term = cexp(1j * PI * tau * half * half + 2j * PI * (z + 0.5) * half)
        dz_fac = 2j * PI * half
        dt_fac = 1j * PI * half * half
        row = term
        for j in range(max_dz + 1):
            col = row
            for s in range(max_dtau + 1):
                v[j, s] = v[j, s] + col
                col = col * dt_fac
            row = row * dz_fac

    cdef double half_out = cutoff + 0.5
    cdef double tail_mag = max(
        cabs(cexp(1j * PI * tau * half_out * half_out + 2j * PI * (z + 0.5) * half_out)),
        cabs(cexp(1j * PI * tau * half_out * half_out - 2j * PI * (z + 0.5) * half_out)),
    )
    cdef double dz_mag = 2.0 * PI * half_out
    cdef double dt_mag = PI * half_out * half_out
    cdef double acc_j = tail_mag
    cdef double acc
    for j in range(max_dz + 1):
        acc = acc_j
        for s in range(max_dtau + 1):
            tl[j, s] = acc
            acc = acc * dt_mag
        acc_j = acc_j * dz_mag
    return vals, tails


def jet_mul(cnp.ndarray[cnp.complex128_t, ndim=3] a,
            cnp.ndarray[cnp.complex128_t, ndim=3] b):
    """Truncated triple-Taylor product; see _kernels_py.jet_mul."""
    cdef int ni = a.shape[0], nj = a.shape[1], nt = a.shape[2]
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] out = np.zeros(
        (ni, nj, nt), dtype=np.complex128)
    cdef double complex[:, :, :] av = a
    cdef double complex[:, :, :] bv = b
    cdef double complex[:, :, :] ov = out
    cdef int i, j, t, p, q, r
    cdef double complex acc
    for i in range(ni):
        for j in range(nj):
            for t in range(nt):
                acc = 0
                for p in range(i + 1):
                    for q in range(j + 1):
                        for r in range(t + 1):
                            acc = acc + av[p, q, r] * bv[i - p, j - q, t - r]
                ov[i, j, t] = acc
    return out
