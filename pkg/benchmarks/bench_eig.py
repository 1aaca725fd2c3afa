"""Compare the compiled and pure-Python Jacobi kernels (numpy's LAPACK eigh as reference).

    python benchmarks/bench_eig.py [--repeats 200] [--campaign-trials 100]
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from qdisturb._jacobi_py import jacobi_eigh as py_kernel

try:
    from qdisturb._jacobi import jacobi_eigh as compiled_kernel
except ImportError:
    compiled_kernel = None


def _hermitian(d, seed=0):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return g + g.conj().T


def bench_kernels(repeats):
    kernels = {"python": lambda a: py_kernel(a, 1e-13, 100), "lapack": np.linalg.eigh}
    if compiled_kernel is not None:
        kernels["compiled"] = lambda a: compiled_kernel(a, 1e-13, 100)
    print(f"{'dim':>4} " + " ".join(f"{k + ' [us]':>15}" for k in kernels) + f" {'speedup':>9}")
    for d in (2, 4, 6, 9, 16):
        a = _hermitian(d)
        times = {k: min(timeit.repeat(lambda: f(a), number=repeats, repeat=3)) / repeats * 1e6
                 for k, f in kernels.items()}
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"{d:>4} " + " ".join(f"{times[k]:>15.1f}" for k in kernels) + f" {speed:>8.1f}x")


def bench_campaign(trials):
    args = [sys.executable, "-m", "qdisturb", "verify", "--trials", str(trials), "--seed", "42"]
    for label, extra in (("compiled", {}), ("python", {"QDISTURB_PURE": "1"})):
        t0 = time.perf_counter()
        proc = subprocess.run(args, env={**os.environ, **extra}, capture_output=True, text=True)
        status = "PASS" if proc.returncode == 0 else f"exit {proc.returncode}"
        print(f"verify --trials {trials} [{label}]: {time.perf_counter() - t0:.2f}s ({status})")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeats", type=int, default=200)
    p.add_argument("--campaign-trials", type=int, default=100)
    args = p.parse_args()
    bench_kernels(args.repeats)
    if args.campaign_trials > 0:
        bench_campaign(args.campaign_trials)


if __name__ == "__main__":
    main()
