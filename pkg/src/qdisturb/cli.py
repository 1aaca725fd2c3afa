"""Command-line entry point: ``qdisturb {verify,werner-sweep,bloch-sweep,eval}``.

Exit codes: 0 pass, 1 relation violation or analytic mismatch, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import relations as rel
from . import sweeps
from .errors import InputError, PreconditionError
from .measure import ProjectiveMeasurement, pi2_basis, qubit_basis
from .qstate import DensityMatrix, reduced
from .verify import RELATION_GROUPS, VerifyConfig, format_result, parse_dims, run

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
EVAL_GROUPS = ("theorem1", "theorem2", "corollary1", "eq16", "multi", "corollary2", "eq17-as-printed")


class UsageError(Exception):
    pass


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def d(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--seed", type=int, default=d(42), help="base RNG seed (u64)")
    parser.add_argument("--tol", type=float, default=d(rel.DEFAULT_TOL), help="relation tolerance")
    parser.add_argument("--out", type=Path, default=d(None), help="write output here instead of stdout")
    parser.add_argument("--format", choices=("csv", "text"), default=d(None), help="output format")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdisturb", description=__doc__.splitlines()[0])
    _common(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="Monte Carlo check of all relations on random states and bases")
    _common(v, suppress=True)
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--dims", type=str, default="2x2,2x3,3x3", help="bipartite dims, e.g. 2x2,2x3")
    v.add_argument("--relations", type=str, default=None,
                   help=f"comma list from: {', '.join(RELATION_GROUPS)}")
    v.add_argument("--as-printed", action="store_true", help="also report the -2 log c M-M variant")
    v.add_argument("--workers", type=int, default=1)

    w = sub.add_parser("werner-sweep", help="Werner-state M-M / M-D / D-D curves")
    _common(w, suppress=True)
    w.add_argument("--eta-steps", type=int, default=101)

    b = sub.add_parser("bloch-sweep", help="single-qubit M-M / M-D / D-D surfaces")
    _common(b, suppress=True)
    b.add_argument("--r3-steps", type=int, default=51)
    b.add_argument("--theta-steps", type=int, default=51)

    e = sub.add_parser("eval", help="evaluate relations for a state and measurements from JSON")
    _common(e, suppress=True)
    e.add_argument("input", type=Path)
    e.add_argument("--relations", type=str, default=None, help=f"comma list from: {', '.join(EVAL_GROUPS)}")
    e.add_argument("--as-printed", action="store_true", help="also report the -2 log c M-M variant")
    return p


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        out.write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def _selection(text: str | None, allowed, default) -> tuple[str, ...]:
    if text is None:
        return tuple(default)
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = [n for n in names if n not in allowed]
    if bad or not names:
        raise UsageError(f"unknown relation selector(s): {', '.join(bad) or '(empty)'}")
    return names


def cmd_verify(args) -> int:
    default = [g for g in RELATION_GROUPS if g != "eq17-as-printed"]
    if args.as_printed:
        default.append("eq17-as-printed")
    try:
        cfg = VerifyConfig(
            trials=args.trials, seed=args.seed, dims=parse_dims(args.dims), tol=args.tol,
            relations=_selection(args.relations, RELATION_GROUPS, default),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    res = run(cfg, workers=args.workers)
    _emit(format_result(res, args.format or "text"), args.out)
    return EXIT_OK if res.ok else EXIT_FAIL


def _sweep_text(result: sweeps.SweepResult, fmt: str) -> str:
    if fmt != "text":
        return result.to_csv()
    lines = [" ".join(f"{h:>19}" for h in result.header)]
    lines += [" ".join(f"{v:>19.12e}" for v in row.values()) for row in result.rows]
    csv = result.to_csv().splitlines()
    lines += [ln for ln in csv if ln.startswith("#")]
    return "\n".join(lines) + "\n"


def cmd_werner_sweep(args) -> int:
    if args.eta_steps < 2:
        raise UsageError("--eta-steps must be >= 2")
    result = sweeps.werner_sweep(args.eta_steps)
    _emit(_sweep_text(result, args.format or "csv"), args.out)
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_bloch_sweep(args) -> int:
    if args.r3_steps < 2 or args.theta_steps < 2:
        raise UsageError("--r3-steps and --theta-steps must be >= 2")
    result = sweeps.bloch_sweep(args.r3_steps, args.theta_steps)
    _emit(_sweep_text(result, args.format or "csv"), args.out)
    return EXIT_OK if result.ok else EXIT_FAIL


# JSON input


def _complex(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(t, (int, float)) for t in x):
        return complex(x[0], x[1])
    raise InputError(f"complex numbers must be [re, im] pairs, got {x!r}")


def _complex_array(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise InputError("expected a non-empty list")
    if isinstance(rows[0], list) and rows[0] and isinstance(rows[0][0], list):
        return np.array([[_complex(x) for x in row] for row in rows], dtype=np.complex128)
    return np.array([_complex(x) for x in rows], dtype=np.complex128)


def parse_state(obj) -> DensityMatrix:
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise InputError('state must be an object with "dims" and "matrix"')
    mat = _complex_array(obj["matrix"])
    if mat.ndim != 2:
        raise InputError("state matrix must be a list of rows")
    dims = obj.get("dims", [mat.shape[0]])
    return DensityMatrix(tuple(dims), mat)


def parse_measurement(obj) -> ProjectiveMeasurement:
    if not isinstance(obj, dict):
        raise InputError(f"measurement must be an object, got {obj!r}")
    if obj.get("pi2"):
        return pi2_basis()
    if "theta" in obj:
        return qubit_basis(float(obj["theta"]), float(obj.get("phi", 0.0)))
    if "vectors" in obj:
        return ProjectiveMeasurement.from_vectors([_complex_array(v) for v in obj["vectors"]])
    raise InputError('measurement needs "theta"/"phi", "pi2": true, or "vectors"')


def load_problem(path: Path):
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "state" not in data:
        raise InputError('input must be an object with "state" and "measurements"')
    state = parse_state(data["state"])
    ms = [parse_measurement(m) for m in data.get("measurements", [])]
    return state, ms


def evaluate(state: DensityMatrix, ms, groups, tol: float) -> list[rel.RelationReport]:
    want = set(groups)
    out: list[rel.RelationReport] = []
    if state.bipartite:
        for m in ms:
            _check_dim(m, state.dims[0])
    else:
        for m in ms:
            _check_dim(m, state.dim)
    if "theorem1" in want and state.bipartite:
        out.extend(rel.theorem1(state, m, tol) for m in ms)
    if len(ms) >= 2:
        m1, m2 = ms[0], ms[1]
        if state.bipartite:
            if "theorem2" in want:
                out.extend(rel.theorem2(state, m1, m2, tol))
        else:
            if "corollary1" in want:
                out.extend(rel.corollary1(state, m1, m2, tol))
            if "eq17-as-printed" in want:
                out.append(rel.mm_as_printed(state, m1, m2, tol))
        if "multi" in want and len(ms) <= rel.MAX_ORDERING_N:
            out.append(rel.multi_mm(state, ms, tol=tol))
        if "corollary2" in want and len(ms) <= rel.MAX_ORDERING_N:
            for split in rel.all_splits(len(ms), nontrivial=False)[1:]:
                out.append(rel.corollary2(state, ms, split, tol=tol))
    if "eq16" in want and not state.bipartite:
        out.extend(rel.entropy_increment(state, m) for m in ms)
    return out


def _check_dim(m, d):
    if m.d != d:
        raise InputError(f"measurement dimension {m.d} does not match measured system dimension {d}")


def format_reports(reports, fmt: str) -> str:
    if fmt == "csv":
        lines = ["relation,kind,asserted,lhs,rhs,slack,satisfied"]
        lines += [f"{r.name},{r.kind},{int(r.asserted)},{r.lhs:.12e},{r.rhs:.12e},{r.slack:.12e},{int(r.satisfied)}"
                  for r in reports]
    else:
        lines = [f"{'relation':<18} {'kind':<10} {'asserted':<8} {'lhs':>19} {'rhs':>19} {'slack':>19} ok"]
        lines += [f"{r.name:<18} {r.kind:<10} {('yes' if r.asserted else 'no'):<8} {r.lhs:>19.12e} "
                  f"{r.rhs:>19.12e} {r.slack:>19.12e} {'yes' if r.satisfied else 'NO'}" for r in reports]
    return "\n".join(lines) + "\n"


def cmd_eval(args) -> int:
    default = [g for g in EVAL_GROUPS if g != "eq17-as-printed"]
    if args.as_printed:
        default.append("eq17-as-printed")
    groups = _selection(args.relations, EVAL_GROUPS, default)
    state, ms = load_problem(args.input)
    reports = evaluate(state, ms, groups, args.tol)
    _emit(format_reports(reports, args.format or "text"), args.out)
    ok = all(r.satisfied for r in reports if r.asserted and math.isfinite(r.slack))
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "verify": cmd_verify,
    "werner-sweep": cmd_werner_sweep,
    "bloch-sweep": cmd_bloch_sweep,
    "eval": cmd_eval,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qdisturb {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, PreconditionError) as exc:
        print(f"qdisturb {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
