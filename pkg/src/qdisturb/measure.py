"""Rank-one projective measurements, outcome statistics and dephasing."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, PreconditionError
from .qstate import DensityMatrix

ORTHO_TOL = 1e-10
COMPLETE_TOL = 1e-9
PROB_CLAMP = 1e-12


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Orthonormal basis; ``basis[:, k]`` is the k-th outcome vector."""

    basis: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.complex128)
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] < 1:
            raise InputError(f"basis must be a square array of column vectors, got shape {b.shape}")
        gram_err = float(np.max(np.abs(b.conj().T @ b - np.eye(b.shape[0]))))
        if gram_err > ORTHO_TOL:
            raise PreconditionError(f"basis is not orthonormal: max Gram residual {gram_err:.3e}")
        comp_err = float(np.max(np.abs(b @ b.conj().T - np.eye(b.shape[0]))))
        if comp_err > COMPLETE_TOL:
            raise PreconditionError(f"basis is not complete: residual {comp_err:.3e}")
        b = b.copy()
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @classmethod
    def from_vectors(cls, vectors, label: str = "") -> "ProjectiveMeasurement":
        return cls(np.column_stack([np.asarray(v, dtype=np.complex128) for v in vectors]), label)

    @property
    def d(self) -> int:
        return self.basis.shape[0]

    def projectors(self) -> np.ndarray:
        """Stack of ``|b_k><b_k|`` with shape ``(d, d, d)``."""
        return np.einsum("ik,jk->kij", self.basis, self.basis.conj())


def computational_basis(d: int) -> ProjectiveMeasurement:
    return ProjectiveMeasurement(np.eye(d), label="Z")


def qubit_basis(theta: float, phi: float = 0.0) -> ProjectiveMeasurement:
    """Qubit basis {(cos t/2, -e^{i phi} sin t/2), (e^{-i phi} sin t/2, cos t/2)}.

    Angles outside ``0 <= theta <= pi``, ``0 <= phi < 2 pi`` are folded back;
    the fold ``(theta, phi) -> (2 pi - theta, phi + pi)`` leaves the projectors
    unchanged.
    """
    theta = math.fmod(theta, 2 * math.pi)
    if theta < 0:
        theta += 2 * math.pi
    if theta > math.pi:
        theta, phi = 2 * math.pi - theta, phi + math.pi
    phi = math.fmod(phi, 2 * math.pi)
    if phi < 0:
        phi += 2 * math.pi
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    e = complex(math.cos(phi), math.sin(phi))
    return ProjectiveMeasurement.from_vectors(
        [(c, -e * s), (e.conjugate() * s, c)], label=f"qubit(theta={theta:g},phi={phi:g})"
    )


def pi2_basis() -> ProjectiveMeasurement:
    """The fixed real qubit basis {(1/2, sqrt3/2), (sqrt3/2, -1/2)}."""
    r = math.sqrt(3.0) / 2.0
    return ProjectiveMeasurement.from_vectors([(0.5, r), (r, -0.5)], label="pi2")


def haar_random_basis(d: int, seed=None) -> ProjectiveMeasurement:
    """Haar-random orthonormal basis from the QR factor of a complex Ginibre matrix."""
    if d < 2:
        raise InputError(f"random basis needs d >= 2, got {d}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    q = q * (diag / np.abs(diag))
    return ProjectiveMeasurement(q, label="haar")


def _resolve_subsystem(m: ProjectiveMeasurement, rho: DensityMatrix, subsystem) -> int | None:
    if subsystem == "auto":
        subsystem = 0 if rho.bipartite else None
    if subsystem is None:
        if m.d != rho.dim:
            raise InputError(f"measurement dimension {m.d} does not match state dimension {rho.dim}")
        return None
    if subsystem != 0 or not rho.bipartite:
        raise InputError("only measurements on the first subsystem of a bipartite state are supported")
    if m.d != rho.dims[0]:
        raise InputError(f"measurement dimension {m.d} does not match subsystem dimension {rho.dims[0]}")
    return 0


def _blocks(rho: DensityMatrix, sub: int | None) -> np.ndarray:
    """View the state as ``t[a, b, a', b']`` with a trivial second factor when unipartite."""
    if sub is None:
        return rho.mat.reshape(rho.dim, 1, rho.dim, 1)
    da, db = rho.dims
    return rho.mat.reshape(da, db, da, db)


def outcome_distribution(m: ProjectiveMeasurement, rho: DensityMatrix, subsystem="auto") -> np.ndarray:
    """Born-rule probabilities ``tr((P_k x I) rho)``, clamped at zero."""
    sub = _resolve_subsystem(m, rho, subsystem)
    t = _blocks(rho, sub)
    marginal = np.einsum("ijkj->ik", t)
    p = np.einsum("ik,ij,jk->k", m.basis.conj(), marginal, m.basis).real
    if np.any(p < -PROB_CLAMP):
        raise PreconditionError(f"negative outcome probability {p.min():.3e}")
    p = np.clip(p, 0.0, None)
    return p


def dephase(m: ProjectiveMeasurement, rho: DensityMatrix, subsystem="auto") -> DensityMatrix:
    """Unselective post-measurement state ``sum_k (P_k x I) rho (P_k x I)``."""
    sub = _resolve_subsystem(m, rho, subsystem)
    key = ("dephase", id(m), sub)
    hit = rho._derived.get(key)
    if hit is not None:
        return hit[1]
    t = _blocks(rho, sub)
    u = m.basis
    # conditional blocks <k|_A rho |k>_A, one per outcome
    cond = np.einsum("ak,abcd,ck->kbd", u.conj(), t, u)
    out = np.einsum("ak,kbd,ck->abcd", u, cond, u.conj())
    post = DensityMatrix(rho.dims, out.reshape(rho.dim, rho.dim))
    rho._derived[key] = (m, post)
    return post
