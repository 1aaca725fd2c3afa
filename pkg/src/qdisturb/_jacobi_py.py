"""Pure-Python cyclic Jacobi eigensolver, used when the compiled kernel is absent."""

import math

import numpy as np


def jacobi_eigh(a_in, tol=1e-13, max_sweeps=100):
    """Same contract as the compiled ``jacobi_eigh``."""
    a = np.array(a_in, dtype=np.complex128)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    fro = np.linalg.norm(a)
    thresh = tol * max(fro, 1.0)

    sweep = 0
    while sweep < max_sweeps:
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= thresh:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g < 1e-300:
                    continue
                ph = apq / g
                alpha = a[p, p].real
                beta = a[q, q].real
                zeta = (beta - alpha) / (2.0 * g)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sp = s * ph
                spc = sp.conjugate()

                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - spc * col_q
                a[:, q] = sp * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - sp * row_q
                a[q, :] = spc * row_p + c * row_q
                a[p, p] = alpha - t * g
                a[q, q] = beta + t * g
                a[p, q] = 0.0
                a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - spc * vq
                v[:, q] = sp * vp + c * vq

    return np.diag(a).real.copy(), v, sweep
