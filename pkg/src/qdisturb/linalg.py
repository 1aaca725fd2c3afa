"""Dense complex linear algebra for small Hermitian matrices.

Matrices are plain ``numpy`` complex128 arrays. The eigensolver is a cyclic
Jacobi iteration; a compiled kernel is used when available and a pure-Python
implementation otherwise. Set ``QDISTURB_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

from .errors import InputError, PreconditionError

HERMITIAN_TOL = 1e-10
SUPPORT_CUTOFF = 1e-12
NEGATIVE_EIG_TOL = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

if os.environ.get("QDISTURB_PURE"):
    from ._jacobi_py import jacobi_eigh as _jacobi_eigh

    BACKEND = "python"
else:
    try:
        from ._jacobi import jacobi_eigh as _jacobi_eigh

        BACKEND = "compiled"
    except ImportError:
        from ._jacobi_py import jacobi_eigh as _jacobi_eigh

        BACKEND = "python"


class Spectrum(NamedTuple):
    """Eigenvalues in ascending order with matching eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def as_matrix(m) -> np.ndarray:
    """Coerce to a square, finite complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InputError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return a


def asymmetry(m: np.ndarray) -> float:
    """Max entrywise deviation from Hermiticity."""
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    return asymmetry(as_matrix(m)) <= tol


def eig_hermitian(m, tol: float = HERMITIAN_TOL) -> Spectrum:
    a = as_matrix(m)
    asym = asymmetry(a)
    if asym > tol:
        raise PreconditionError(f"matrix is not Hermitian: max asymmetry {asym:.3e} > {tol:.0e}")
    w, v, _ = _jacobi_eigh(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    order = np.argsort(w, kind="stable")
    return Spectrum(np.asarray(w)[order], np.asarray(v)[:, order])


def kron(a, b) -> np.ndarray:
    """Tensor product with the first factor as the slow index."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, dims, keep: int) -> np.ndarray:
    """Trace out one factor of a bipartite operator and return the ``keep`` factor."""
    a = as_matrix(m)
    dims = tuple(int(d) for d in dims)
    if len(dims) != 2:
        raise InputError(f"partial_trace supports exactly two subsystems, got dims {dims}")
    if dims[0] * dims[1] != a.shape[0]:
        raise InputError(f"dims {dims} do not match matrix dimension {a.shape[0]}")
    if keep not in (0, 1):
        raise InputError(f"keep must be 0 or 1, got {keep}")
    t = a.reshape(dims[0], dims[1], dims[0], dims[1])
    if keep == 0:
        return np.einsum("ijkj->ik", t)
    return np.einsum("ijil->jl", t)


def spectral_function(m, fn, cutoff: float = SUPPORT_CUTOFF) -> np.ndarray:
    """Apply ``fn`` to eigenvalues above ``cutoff``; drop the rest of the spectrum."""
    spec = eig_hermitian(m)
    keep = spec.eigenvalues > cutoff
    vecs = spec.eigenvectors[:, keep]
    return (vecs * fn(spec.eigenvalues[keep])) @ vecs.conj().T


def spectral_log2(m) -> np.ndarray:
    """Base-2 matrix logarithm restricted to the support of a PSD matrix.

    Eigenvalues at or below ``SUPPORT_CUTOFF`` count as exact zeros and their
    eigenspaces map to zero, so ``trace(rho @ spectral_log2(rho))`` follows the
    ``0 log 0 = 0`` convention.
    """
    return log2_from_spectrum(eig_hermitian(m))


def log2_from_spectrum(spec: Spectrum, neg_tol: float = NEGATIVE_EIG_TOL) -> np.ndarray:
    lo = spec.eigenvalues[0]
    if lo < -neg_tol:
        raise PreconditionError(f"matrix has negative eigenvalue {lo:.3e}")
    keep = spec.eigenvalues > SUPPORT_CUTOFF
    vecs = spec.eigenvectors[:, keep]
    return (vecs * np.log2(spec.eigenvalues[keep])) @ vecs.conj().T


def support_projector(m, cutoff: float = SUPPORT_CUTOFF) -> np.ndarray:
    return spectral_function(m, np.ones_like, cutoff)
