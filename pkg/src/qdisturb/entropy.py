"""Entropies in bits and the complementarity terms built from basis overlaps."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import InputError
from .linalg import SUPPORT_CUTOFF, log2_from_spectrum
from .measure import ProjectiveMeasurement, outcome_distribution
from .qstate import PSD_TOL, DensityMatrix, reduced

SUPPORT_TOL = 1e-9


def xlog2x(x) -> np.ndarray:
    """Elementwise ``x log2 x`` with ``0 log 0 = 0``."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log2(x[pos])
    return out


def von_neumann(rho: DensityMatrix) -> float:
    w = rho.spectrum.eigenvalues
    w = w[w > SUPPORT_CUTOFF]
    return float(max(-np.sum(w * np.log2(w)), 0.0))


def shannon(p) -> float:
    p = np.clip(np.asarray(p, dtype=float), 0.0, None)
    return float(max(-np.sum(xlog2x(p)), 0.0))


def conditional(rho_ab: DensityMatrix) -> float:
    """``H(A|B) = H(rho_AB) - H(rho_B)``."""
    if not rho_ab.bipartite:
        raise InputError("conditional entropy needs a bipartite state")
    return von_neumann(rho_ab) - von_neumann(reduced(rho_ab, 1))


def relative(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Quantum relative entropy ``tr rho (log2 rho - log2 sigma)``; ``inf`` off support."""
    if rho.dim != sigma.dim:
        raise InputError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    spec = sigma.spectrum
    on = spec.eigenvalues > SUPPORT_CUTOFF
    kernel = spec.eigenvectors[:, ~on]
    if kernel.shape[1]:
        leak = kernel.conj().T @ rho.mat @ kernel
        if np.max(np.abs(leak)) > SUPPORT_TOL:
            return math.inf
    vecs = spec.eigenvectors[:, on]
    log_sigma = (vecs * np.log2(spec.eigenvalues[on])) @ vecs.conj().T
    value = np.trace(rho.mat @ (log2_from_spectrum(rho.spectrum, PSD_TOL) - log_sigma)).real
    return float(value)


def overlap_matrix(m1: ProjectiveMeasurement, m2: ProjectiveMeasurement) -> np.ndarray:
    """``C[k, l] = |<m1_k|m2_l>|^2``."""
    if m1.d != m2.d:
        raise InputError(f"measurement dimensions differ: {m1.d} vs {m2.d}")
    return np.abs(m1.basis.conj().T @ m2.basis) ** 2


def overlap_c(m1: ProjectiveMeasurement, m2: ProjectiveMeasurement) -> float:
    """Maximal squared overlap between the two bases, in ``[1/d, 1]``."""
    return float(np.max(overlap_matrix(m1, m2)))


def chain_weights(ordering: Sequence[ProjectiveMeasurement]) -> np.ndarray:
    """Per-outcome weight of the last measurement in a sequence.

    Entry ``a_N`` is the sum over the intermediate outcomes of the product of
    consecutive squared overlaps, maximized over the first outcome. The max
    only touches the first factor, so it collapses to a vector-matrix chain.
    """
    if len(ordering) < 2:
        raise InputError(f"need at least two measurements, got {len(ordering)}")
    mats = [overlap_matrix(a, b) for a, b in zip(ordering[:-1], ordering[1:])]
    w = mats[0].max(axis=0)
    for c in mats[1:]:
        w = w @ c
    return w


def ell_u(ordering: Sequence[ProjectiveMeasurement], rho: DensityMatrix) -> float:
    """State-dependent complementarity term for a fixed measurement order.

    The outcome probabilities are those of the last measurement in
    ``ordering`` applied to ``rho`` (first subsystem when bipartite).
    """
    w = chain_weights(ordering)
    p = outcome_distribution(ordering[-1], rho)
    return float(-np.sum(p * np.log2(w)))


def ell_u_tilde(ordering: Sequence[ProjectiveMeasurement]) -> float:
    """State-independent version of :func:`ell_u` (worst last outcome)."""
    return float(-np.log2(np.max(chain_weights(ordering))))


def pair_bound_b(first: ProjectiveMeasurement, second: ProjectiveMeasurement, rho: DensityMatrix) -> float:
    return ell_u([first, second], rho)
