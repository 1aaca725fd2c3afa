# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi eigensolver for small dense Hermitian matrices."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot

cnp.import_array()


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


def jacobi_eigh(a_in, double tol=1e-13, int max_sweeps=100):
    """Diagonalize a Hermitian matrix in place on a copy.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` with eigenvalues
    unsorted and eigenvectors stored as columns.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] arr = np.array(a_in, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = arr.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] varr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] a = arr
    cdef double complex[:, ::1] v = varr
    cdef Py_ssize_t i, j, k, p, q
    cdef int sweep = 0
    cdef double off, fro, g, alpha, beta, zeta, t, c, s, thresh
    cdef double complex ph, akp, akq

    with nogil:
        # symmetrize so roundoff asymmetry in the input does not leak into the rotations
        for i in range(n):
            a[i, i] = a[i, i].real
            for j in range(i + 1, n):
                akp = 0.5 * (a[i, j] + a[j, i].conjugate())
                a[i, j] = akp
                a[j, i] = akp.conjugate()

        fro = 0.0
        for i in range(n):
            for j in range(n):
                fro += cabs2(a[i, j])
        fro = sqrt(fro)
        thresh = tol * (fro if fro > 1.0 else 1.0)

        while sweep < max_sweeps:
            off = 0.0
            for i in range(n):
                for j in range(i + 1, n):
                    off += cabs2(a[i, j])
            off = sqrt(2.0 * off)
            if off <= thresh:
                break
            sweep += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    g = sqrt(cabs2(a[p, q]))
                    if g < 1e-300:
                        continue
                    ph = a[p, q] / g
                    alpha = a[p, p].real
                    beta = a[q, q].real
                    zeta = (beta - alpha) / (2.0 * g)
                    if zeta >= 0.0:
                        t = 1.0 / (zeta + hypot(1.0, zeta))
                    else:
                        t = -1.0 / (-zeta + hypot(1.0, zeta))
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    # A <- A G with G = [[c, s ph], [-s conj(ph), c]]
                    for k in range(n):
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * ph.conjugate() * akq
                        a[k, q] = s * ph * akp + c * akq
                    # A <- G^H A
                    for k in range(n):
                        akp = a[p, k]
                        akq = a[q, k]
                        a[p, k] = c * akp - s * ph * akq
                        a[q, k] = s * ph.conjugate() * akp + c * akq
                    a[p, p] = alpha - t * g
                    a[q, q] = beta + t * g
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    for k in range(n):
                        akp = v[k, p]
                        akq = v[k, q]
                        v[k, p] = c * akp - s * ph.conjugate() * akq
                        v[k, q] = s * ph * akp + c * akq

    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = arr[i, i].real
    return w, varr, sweep
