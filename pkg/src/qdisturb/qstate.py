"""Density matrices and the state families used throughout the package."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, PreconditionError
from .linalg import Spectrum, as_matrix, asymmetry, eig_hermitian, kron, partial_trace

TRACE_TOL = 1e-9
PSD_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A state on one or two subsystems.

    Basis order is ``|a b>`` with the first subsystem as the slow index, so
    ``dims=(2, 2)`` orders the basis ``|00>, |01>, |10>, |11>``.
    """

    dims: tuple[int, ...]
    mat: np.ndarray = field(repr=False)
    spectrum: Spectrum = field(init=False, repr=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not 1 <= len(dims) <= 2 or any(d < 1 for d in dims):
            raise InputError(f"dims must list one or two positive dimensions, got {self.dims}")
        mat = as_matrix(self.mat)
        if int(np.prod(dims)) != mat.shape[0]:
            raise InputError(f"dims {dims} do not match matrix dimension {mat.shape[0]}")
        asym = asymmetry(mat)
        if asym > 1e-10:
            raise PreconditionError(f"state is not Hermitian: max asymmetry {asym:.3e}")
        tr = float(np.trace(mat).real)
        if abs(tr - 1.0) > TRACE_TOL:
            raise PreconditionError(f"state trace is {tr:.12g}, trace residual {tr - 1.0:.3g}")
        mat = 0.5 * (mat + mat.conj().T)
        spec = eig_hermitian(mat)
        lo = spec.eigenvalues[0]
        if lo < -PSD_TOL:
            raise PreconditionError(f"state is not positive semidefinite: min eigenvalue {lo:.3e}")
        mat.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "spectrum", spec)
        # derived states keyed by operation; values keep their inputs alive so ids stay unique
        object.__setattr__(self, "_derived", {})

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def bipartite(self) -> bool:
        return len(self.dims) == 2

    def purity(self) -> float:
        return float(np.trace(self.mat @ self.mat).real)


def pure(v, dims=None) -> DensityMatrix:
    vec = np.asarray(v, dtype=np.complex128).ravel()
    norm2 = float(np.vdot(vec, vec).real)
    if norm2 <= 0.0:
        raise InputError("cannot build a pure state from the zero vector")
    dims = (vec.size,) if dims is None else tuple(dims)
    return DensityMatrix(dims, np.outer(vec, vec.conj()) / norm2)


def bell() -> DensityMatrix:
    """Projector onto (|00> + |11>)/sqrt(2)."""
    return pure([1, 0, 0, 1], dims=(2, 2))


def werner(eta: float) -> DensityMatrix:
    """``eta |psi+><psi+| + (1 - eta) I/4`` on two qubits."""
    if not 0.0 <= eta <= 1.0:
        raise InputError(f"Werner parameter must lie in [0, 1], got {eta}")
    return DensityMatrix((2, 2), eta * bell().mat + (1.0 - eta) / 4.0 * np.eye(4))


def bloch_qubit(r3: float) -> DensityMatrix:
    """Qubit with Bloch vector (0, 0, r3)."""
    if not -1.0 <= r3 <= 1.0:
        raise InputError(f"Bloch component must lie in [-1, 1], got {r3}")
    return DensityMatrix((2,), np.diag([(1.0 + r3) / 2.0, (1.0 - r3) / 2.0]))


def maximally_mixed(dims) -> DensityMatrix:
    dims = tuple(dims)
    d = int(np.prod(dims))
    return DensityMatrix(dims, np.eye(d) / d)


def product(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    if a.bipartite or b.bipartite:
        raise InputError("product expects two single-subsystem states")
    return DensityMatrix((a.dim, b.dim), kron(a.mat, b.mat))


def reduced(rho: DensityMatrix, keep: int) -> DensityMatrix:
    if not rho.bipartite:
        raise InputError("reduced state needs a bipartite input")
    key = ("reduced", keep)
    if key not in rho._derived:
        rho._derived[key] = DensityMatrix((rho.dims[keep],), partial_trace(rho.mat, rho.dims, keep))
    return rho._derived[key]


def random_density(d: int, rank: int | None = None, seed=None, dims=None) -> DensityMatrix:
    """Induced-measure random state ``G G^H / tr(G G^H)`` with ``G`` of shape ``d x rank``.

    ``seed`` is anything ``numpy.random.default_rng`` accepts, including a
    ``Generator`` which is then advanced.
    """
    rank = d if rank is None else rank
    if not 1 <= rank <= d:
        raise InputError(f"rank must lie in [1, {d}], got {rank}")
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))) / np.sqrt(2.0)
    m = g @ g.conj().T
    m /= np.trace(m).real
    return DensityMatrix((d,) if dims is None else tuple(dims), m)
