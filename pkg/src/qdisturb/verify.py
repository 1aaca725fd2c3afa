"""Seeded Monte Carlo campaigns over random states and random bases.

Each trial derives its own generator from ``(seed, trial)``, so results do
not depend on evaluation order or on how trials are spread over workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import relations as rel
from .measure import computational_basis, haar_random_basis, qubit_basis
from .qstate import bloch_qubit, product, random_density

RELATION_GROUPS = (
    "theorem1", "theorem2", "corollary1", "eq16", "multi", "corollary2", "lopt", "eq17-as-printed",
)
IDENTITY_TOL = 1e-9


@dataclass(frozen=True)
class VerifyConfig:
    trials: int = 1000
    seed: int = 42
    dims: tuple[tuple[int, int], ...] = ((2, 2), (2, 3), (3, 3))
    tol: float = rel.DEFAULT_TOL
    relations: tuple[str, ...] = RELATION_GROUPS

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.dims:
            raise ValueError("need at least one dimension pair")
        for da, db in self.dims:
            if da < 2 or db < 1:
                raise ValueError(f"bad dimension pair {da}x{db}")
        unknown = set(self.relations) - set(RELATION_GROUPS)
        if unknown:
            raise ValueError(f"unknown relations: {', '.join(sorted(unknown))}")


def parse_dims(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for part in text.split(","):
        a, _, b = part.strip().lower().partition("x")
        out.append((int(a), int(b)))
    return tuple(out)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed % 2**64, trial]))


def run_trial(cfg: VerifyConfig, trial: int) -> list[rel.RelationReport]:
    rng = trial_rng(cfg.seed, trial)
    da, db = cfg.dims[trial % len(cfg.dims)]
    tol = cfg.tol
    rho_ab = random_density(da * db, int(rng.integers(1, da * db + 1)), rng, dims=(da, db))
    ms = [haar_random_basis(da, rng) for _ in range(4)]
    rho = random_density(da, int(rng.integers(1, da + 1)), rng)
    sigma_b = random_density(db, int(rng.integers(1, db + 1)), rng)
    m1, m2 = ms[0], ms[1]
    want = set(cfg.relations)
    out: list[rel.RelationReport] = []

    if "theorem1" in want:
        out.append(rel.theorem1(rho_ab, m1, tol))
        out.append(rel.theorem1(rho_ab, m2, tol))
    if "theorem2" in want:
        out.extend(rel.theorem2(rho_ab, m1, m2, tol))
    if "corollary1" in want:
        out.extend(rel.corollary1(rho, m1, m2, tol, chain_tol=IDENTITY_TOL))
    if "eq16" in want:
        r = rel.entropy_increment(rho, m1, IDENTITY_TOL)
        out.append(r)
    triple = ms[:3]
    states = {"mem": rho_ab, "prod": product(rho, sigma_b), "nomem": rho}
    if "multi" in want:
        for tag, state in states.items():
            r = rel.multi_mm(state, triple, use_opt=False, tol=tol)
            out.append(_renamed(r, f"multi.{tag}"))
    if "corollary2" in want:
        for tag in ("mem", "nomem"):
            state = states[tag]
            mm = rel.multi_mm(state, triple, use_opt=False, tol=tol)
            s = mm.aux["state_term"]
            for split in rel.all_splits(3):
                r = rel.corollary2(state, triple, split, use_opt=False, tol=tol)
                out.append(_renamed(r, f"{r.name}.{tag}"))
                out.append(rel.RelationReport(f"c2.subst.{tag}", r.lhs, mm.lhs - split.beta * s,
                                              kind="identity", tol=IDENTITY_TOL))
    if "lopt" in want:
        r = rel.multi_mm(rho_ab, ms, use_opt=True, tol=tol)
        out.append(rel.RelationReport("lopt.mem", r.lhs, r.aux["Lopt"], tol=tol, asserted=False))
    if "eq17-as-printed" in want:
        out.append(rel.mm_as_printed(rho, m1, m2, tol))
        if trial == 0:
            canon = rel.mm_as_printed(bloch_qubit(1.0), computational_basis(2), qubit_basis(math.pi / 2, 0.0), tol)
            out.append(_renamed(canon, "eq17-as-printed.canonical"))
    return out


def _renamed(r: rel.RelationReport, name: str) -> rel.RelationReport:
    return rel.RelationReport(name, r.lhs, r.rhs, r.kind, r.tol, r.asserted, r.aux)


@dataclass
class RelationStats:
    kind: str
    asserted: bool
    count: int = 0
    min_slack: float = math.inf
    max_abs_slack: float = 0.0
    violations: int = 0


@dataclass
class VerifyResult:
    cfg: VerifyConfig
    stats: dict = field(default_factory=dict)
    events: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.violations == 0 for s in self.stats.values() if s.asserted)

    def add(self, trial: int, dims, r: rel.RelationReport) -> None:
        st = self.stats.get(r.name)
        if st is None:
            st = self.stats[r.name] = RelationStats(r.kind, r.asserted)
        st.count += 1
        st.min_slack = min(st.min_slack, r.slack)
        st.max_abs_slack = max(st.max_abs_slack, abs(r.slack))
        if not r.satisfied:
            st.violations += 1
            tag = "VIOLATION" if r.asserted else "REPORT"
            self.events.append(
                f"{tag} trial={trial} dims={dims[0]}x{dims[1]} relation={r.name} "
                f"lhs={r.lhs:.12e} rhs={r.rhs:.12e} slack={r.slack:.6e}"
            )


def _run_one(args):
    cfg, trial = args
    return run_trial(cfg, trial)


def run(cfg: VerifyConfig, workers: int = 1) -> VerifyResult:
    res = VerifyResult(cfg)
    jobs = [(cfg, t) for t in range(cfg.trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = pool.map(_run_one, jobs, chunksize=max(1, cfg.trials // (8 * workers)))
            for t, rs in enumerate(reports):
                for r in rs:
                    res.add(t, cfg.dims[t % len(cfg.dims)], r)
    else:
        for t in range(cfg.trials):
            for r in run_trial(cfg, t):
                res.add(t, cfg.dims[t % len(cfg.dims)], r)
    return res


def format_result(res: VerifyResult, fmt: str = "text") -> str:
    cfg = res.cfg
    lines = list(res.events)
    dims = ",".join(f"{a}x{b}" for a, b in cfg.dims)
    if fmt == "csv":
        lines = [f"# {e}" for e in lines]
        lines.append("relation,kind,asserted,count,min_slack,max_abs_slack,violations")
        for name, s in res.stats.items():
            lines.append(f"{name},{s.kind},{int(s.asserted)},{s.count},{s.min_slack:.12e},"
                         f"{s.max_abs_slack:.12e},{s.violations}")
    else:
        lines.append(f"{'relation':<26} {'kind':<10} {'asserted':<8} {'count':>6} "
                     f"{'min_slack':>14} {'max|slack|':>14} {'violations':>10}")
        for name, s in res.stats.items():
            lines.append(f"{name:<26} {s.kind:<10} {('yes' if s.asserted else 'no'):<8} {s.count:>6} "
                         f"{s.min_slack:>14.6e} {s.max_abs_slack:>14.6e} {s.violations:>10}")
    lines.append(f"# trials={cfg.trials} seed={cfg.seed} dims={dims} tol={cfg.tol:g} "
                 f"status={'PASS' if res.ok else 'FAIL'}")
    return "\n".join(lines) + "\n"
