"""Uncertainty, disturbance and trade-off relations evaluated as reports.

Every evaluator returns :class:`RelationReport` objects carrying both sides
of the relation; nothing here raises on a violated bound. Quantities follow
one naming scheme:

* uncertainty of measurement ``m``: ``H(m|B)`` for a bipartite state (measured
  on the first factor), or ``H(rho_m)`` for a single system;
* disturbance of ``m``: ``D(rho || dephase(m, rho))``;
* state term: ``H(A|B)`` or ``H(rho)`` respectively.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .entropy import conditional, ell_u, overlap_c, pair_bound_b, relative, von_neumann
from .errors import InputError
from .measure import ProjectiveMeasurement, dephase
from .qstate import DensityMatrix, reduced

DEFAULT_TOL = 1e-8
MAX_ORDERING_N = 6


@dataclass(frozen=True)
class RelationReport:
    name: str
    lhs: float
    rhs: float
    kind: str = "inequality"
    tol: float = DEFAULT_TOL
    asserted: bool = True
    aux: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in ("identity", "inequality"):
            raise InputError(f"unknown relation kind {self.kind!r}")

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    @property
    def satisfied(self) -> bool:
        if self.kind == "identity":
            return abs(self.slack) <= self.tol
        return self.slack >= -self.tol


@dataclass(frozen=True)
class SplitSpec:
    """Partition of measurement indices into uncertainty and disturbance terms."""

    gamma_set: tuple[int, ...]
    beta_set: tuple[int, ...]

    def validate(self, n: int) -> None:
        g, b = set(self.gamma_set), set(self.beta_set)
        if len(g) != len(self.gamma_set) or len(b) != len(self.beta_set):
            raise InputError("split has repeated indices")
        if g & b:
            raise InputError(f"split sets overlap on {sorted(g & b)}")
        if g | b != set(range(n)):
            raise InputError(f"split {sorted(g)}/{sorted(b)} does not cover measurements 0..{n - 1}")

    @property
    def beta(self) -> int:
        return len(self.beta_set)


def all_splits(n: int, nontrivial: bool = True) -> list[SplitSpec]:
    """Every split of ``range(n)``; ``nontrivial`` drops the all-M and all-D cases."""
    out = []
    for mask in range(2**n):
        beta = tuple(i for i in range(n) if mask >> i & 1)
        if nontrivial and len(beta) in (0, n):
            continue
        out.append(SplitSpec(tuple(i for i in range(n) if not mask >> i & 1), beta))
    return out


def state_term(rho: DensityMatrix) -> float:
    return conditional(rho) if rho.bipartite else von_neumann(rho)


def uncertainty(rho: DensityMatrix, m: ProjectiveMeasurement) -> float:
    post = dephase(m, rho)
    if rho.bipartite:
        return von_neumann(post) - von_neumann(reduced(rho, 1))
    return von_neumann(post)


def disturbance(rho: DensityMatrix, m: ProjectiveMeasurement) -> float:
    return relative(rho, dephase(m, rho))


def _require_bipartite(rho):
    if not rho.bipartite:
        raise InputError("relation needs a bipartite state (quantum memory on the second factor)")


def _require_single(rho):
    if rho.bipartite:
        raise InputError("relation needs a single-system state")


def theorem1(rho_ab: DensityMatrix, m: ProjectiveMeasurement, tol: float = DEFAULT_TOL) -> RelationReport:
    """Disturbance minus measurement uncertainty equals ``-H(A|B)``.

    The left side is assembled from the relative entropy of ``rho_AB`` to its
    dephased version and the entropies of the dephased and reduced states;
    the right side comes from the spectra of ``rho_AB`` and ``rho_B`` alone.
    """
    _require_bipartite(rho_ab)
    post = dephase(m, rho_ab)
    dist = relative(rho_ab, post)
    unc = von_neumann(post) - von_neumann(reduced(rho_ab, 1))
    return RelationReport(
        "theorem1", dist - unc, -conditional(rho_ab), kind="identity", tol=tol,
        aux={"disturbance": dist, "uncertainty": unc},
    )


def mm_memory(rho_ab, m1, m2, tol: float = DEFAULT_TOL) -> RelationReport:
    _require_bipartite(rho_ab)
    c = overlap_c(m1, m2)
    return RelationReport("mm", uncertainty(rho_ab, m1) + uncertainty(rho_ab, m2),
                          -math.log2(c) + conditional(rho_ab), tol=tol, aux={"c": c})


def md_memory(rho_ab, m_disturbed, m_measured, tol: float = DEFAULT_TOL, name: str = "md") -> RelationReport:
    _require_bipartite(rho_ab)
    c = overlap_c(m_disturbed, m_measured)
    return RelationReport(name, disturbance(rho_ab, m_disturbed) + uncertainty(rho_ab, m_measured),
                          -math.log2(c), tol=tol, aux={"c": c})


def dd_memory(rho_ab, m1, m2, tol: float = DEFAULT_TOL) -> RelationReport:
    _require_bipartite(rho_ab)
    c = overlap_c(m1, m2)
    return RelationReport("dd", disturbance(rho_ab, m1) + disturbance(rho_ab, m2),
                          -math.log2(c) - conditional(rho_ab), tol=tol, aux={"c": c})


def theorem2(rho_ab, m1, m2, tol: float = DEFAULT_TOL) -> list[RelationReport]:
    """M-M, both M-D orders and D-D with quantum memory."""
    return [
        mm_memory(rho_ab, m1, m2, tol),
        md_memory(rho_ab, m1, m2, tol, name="md12"),
        md_memory(rho_ab, m2, m1, tol, name="md21"),
        dd_memory(rho_ab, m1, m2, tol),
    ]


def corollary1(rho: DensityMatrix, m1, m2, tol: float = DEFAULT_TOL,
               chain_tol: float = 1e-9) -> list[RelationReport]:
    """No-memory M-M, M-D (both orders) and D-D bounds plus the chain identities.

    The M-M bound is ``-log2 c + H(rho)``. The two chain identities state
    ``MM = MD + H(rho)`` and ``MM = DD + 2 H(rho)``.
    """
    _require_single(rho)
    c = overlap_c(m1, m2)
    neg_log_c = -math.log2(c)
    h = von_neumann(rho)
    h1 = von_neumann(dephase(m1, rho))
    h2 = von_neumann(dephase(m2, rho))
    d1 = disturbance(rho, m1)
    d2 = disturbance(rho, m2)
    mm, md12, md21, dd = h1 + h2, d1 + h2, d2 + h1, d1 + d2
    aux = {"c": c, "H": h}
    return [
        RelationReport("c1.mm", mm, neg_log_c + h, tol=tol, aux=aux),
        RelationReport("c1.md12", md12, neg_log_c, tol=tol, aux=aux),
        RelationReport("c1.md21", md21, neg_log_c, tol=tol, aux=aux),
        RelationReport("c1.dd", dd, neg_log_c - h, tol=tol, aux=aux),
        RelationReport("eq21.md", mm, md12 + h, kind="identity", tol=chain_tol),
        RelationReport("eq21.dd", mm, dd + 2 * h, kind="identity", tol=chain_tol),
    ]


def mm_as_printed(rho: DensityMatrix, m1, m2, tol: float = DEFAULT_TOL) -> RelationReport:
    """No-memory M-M with the ``-2 log2 c`` coefficient; reported, never asserted."""
    _require_single(rho)
    c = overlap_c(m1, m2)
    lhs = von_neumann(dephase(m1, rho)) + von_neumann(dephase(m2, rho))
    return RelationReport("eq17-as-printed", lhs, -2 * math.log2(c) + von_neumann(rho),
                          tol=tol, asserted=False, aux={"c": c})


def entropy_increment(rho: DensityMatrix, m, tol: float = 1e-9) -> RelationReport:
    """``D(rho || rho_m) = H(rho_m) - H(rho)`` for a single system."""
    _require_single(rho)
    post = dephase(m, rho)
    return RelationReport("eq16", relative(rho, post), von_neumann(post) - von_neumann(rho),
                          kind="identity", tol=tol)


def ordering_max_ell(measurements: Sequence[ProjectiveMeasurement], rho: DensityMatrix):
    """Max of ``ell_u`` over all orderings; ties resolve to the first in lexicographic order."""
    n = len(measurements)
    if n < 2:
        raise InputError(f"need at least two measurements, got {n}")
    if n > MAX_ORDERING_N:
        raise InputError(f"{n} measurements means {math.factorial(n)} orderings; limit is {MAX_ORDERING_N}")
    best, arg = -math.inf, None
    for perm in itertools.permutations(range(n)):
        val = ell_u([measurements[i] for i in perm], rho)
        if val > best:
            best, arg = val, perm
    return best, arg


def perfect_matchings(items: Sequence[int]):
    items = list(items)
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for tail in perfect_matchings(rest):
            yield [(first, items[k])] + tail


def max_pairing_b(measurements: Sequence[ProjectiveMeasurement], rho: DensityMatrix):
    """Best perfect matching of the measurements into pairs.

    Each pair scores the better of its two orders under :func:`pair_bound_b`;
    a matching scores the sum over its pairs. Returns ``(None, None)`` for odd N.
    """
    n = len(measurements)
    if n % 2:
        return None, None
    pair = {}
    for i, j in itertools.combinations(range(n), 2):
        pair[i, j] = max(pair_bound_b(measurements[i], measurements[j], rho),
                         pair_bound_b(measurements[j], measurements[i], rho))
    best, arg = -math.inf, None
    for matching in perfect_matchings(range(n)):
        val = sum(pair[p] for p in matching)
        if val > best:
            best, arg = val, matching
    return best, arg


def corollary2(rho: DensityMatrix, measurements: Sequence[ProjectiveMeasurement], split: SplitSpec,
               memory: bool | None = None, use_opt: bool = True, tol: float = DEFAULT_TOL,
               name: str | None = None) -> RelationReport:
    """Mixed uncertainty/disturbance bound for N measurements.

    The left side is the plain sum of uncertainties over ``split.gamma_set``
    and disturbances over ``split.beta_set``. The right side is
    ``max(L1, Lopt, 0)`` with

    * ``L1 = (N - 1 - beta) S + max over orderings of ell_u``,
    * ``Lopt = (N/2 - beta) S + best pairing score`` (even N only),

    where ``S`` is ``H(A|B)`` with memory and ``H(rho)`` without. Set
    ``use_opt=False`` to leave ``Lopt`` out of the asserted bound; it is still
    evaluated and stored in ``aux``.
    """
    n = len(measurements)
    if n < 2:
        raise InputError(f"need at least two measurements, got {n}")
    split.validate(n)
    if memory is None:
        memory = rho.bipartite
    if memory:
        _require_bipartite(rho)
    else:
        _require_single(rho)
    s = state_term(rho)
    beta = split.beta
    lhs = (sum(uncertainty(rho, measurements[i]) for i in split.gamma_set)
           + sum(disturbance(rho, measurements[j]) for j in split.beta_set))
    ell, ordering = ordering_max_ell(measurements, rho)
    l1 = (n - 1 - beta) * s + ell
    bprime, matching = max_pairing_b(measurements, rho)
    lopt = None if bprime is None else (n / 2 - beta) * s + bprime
    candidates = [l1, 0.0]
    if use_opt and lopt is not None:
        candidates.append(lopt)
    if name is None:
        name = "multi_mm" if beta == 0 else f"c2[{''.join(map(str, split.beta_set))}]"
    return RelationReport(
        name, lhs, max(candidates), tol=tol,
        aux={"L1": l1, "Lopt": lopt, "ell": ell, "ordering": ordering, "matching": matching,
             "state_term": s, "beta": beta, "memory": memory},
    )


def multi_mm(rho: DensityMatrix, measurements: Sequence[ProjectiveMeasurement], use_opt: bool = True,
             tol: float = DEFAULT_TOL) -> RelationReport:
    """Sum of N measurement uncertainties against ``max(L1, Lopt, 0)``."""
    split = SplitSpec(tuple(range(len(measurements))), ())
    return corollary2(rho, measurements, split, use_opt=use_opt, tol=tol)
