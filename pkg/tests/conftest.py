import itertools
import math

import numpy as np
import pytest

from qdisturb import linalg
from qdisturb._jacobi_py import jacobi_eigh as py_jacobi

try:
    from qdisturb._jacobi import jacobi_eigh as compiled_jacobi
except ImportError:
    compiled_jacobi = None

KERNELS = {"python": py_jacobi}
if compiled_jacobi is not None:
    KERNELS["compiled"] = compiled_jacobi


@pytest.fixture(params=sorted(KERNELS))
def kernel(request, monkeypatch):
    """Run a test once per available eigensolver kernel."""
    monkeypatch.setattr(linalg, "_jacobi_eigh", KERNELS[request.param])
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def random_unitary(rng, d):
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def ell_brute(ordering, p_last, tilde=False):
    """Exhaustive loop over every outcome tuple."""
    n = len(ordering)
    d = ordering[0].d
    vec = [[m.basis[:, a] for a in range(d)] for m in ordering]

    def ov(k, a, b):
        return abs(np.vdot(vec[k][a], vec[k + 1][b])) ** 2

    brackets = []
    for a_last in range(d):
        total = 0.0
        for middle in itertools.product(range(d), repeat=n - 2):
            best = 0.0
            for a1 in range(d):
                idx = (a1, *middle, a_last)
                prod = 1.0
                for k in range(n - 1):
                    prod *= ov(k, idx[k], idx[k + 1])
                best = max(best, prod)
            total += best
        brackets.append(total)
    if tilde:
        return -math.log2(max(brackets))
    return -sum(p * math.log2(b) for p, b in zip(p_last, brackets))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
