"""Entropic measurement-uncertainty and disturbance relations for small quantum systems."""

from .entropy import (
    conditional, ell_u, ell_u_tilde, overlap_c, pair_bound_b, relative, shannon, von_neumann,
)
from .errors import InputError, PreconditionError
from .linalg import BACKEND, Spectrum, eig_hermitian, kron, partial_trace, spectral_log2
from .measure import (
    ProjectiveMeasurement, computational_basis, dephase, haar_random_basis, outcome_distribution,
    pi2_basis, qubit_basis,
)
from .qstate import (
    DensityMatrix, bell, bloch_qubit, maximally_mixed, product, pure, random_density, reduced, werner,
)
from .relations import (
    RelationReport, SplitSpec, corollary1, corollary2, dd_memory, md_memory, mm_memory, multi_mm,
    ordering_max_ell, theorem1, theorem2,
)

__version__ = "0.1.0"
