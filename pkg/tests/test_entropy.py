import math

import numpy as np
import pytest
import scipy.linalg

from qdisturb.entropy import (
    chain_weights, conditional, ell_u, ell_u_tilde, overlap_c, overlap_matrix, pair_bound_b, relative,
    shannon, von_neumann,
)
from qdisturb.errors import InputError
from qdisturb.measure import computational_basis, dephase, haar_random_basis, outcome_distribution, pi2_basis, qubit_basis
from qdisturb.qstate import bell, maximally_mixed, product, pure, random_density, werner

from conftest import ell_brute

HADAMARD = qubit_basis(math.pi / 2, 0.0)
Z = computational_basis(2)


def test_von_neumann_examples():
    assert von_neumann(pure([1, 1j, 0])) == pytest.approx(0, abs=1e-12)
    assert von_neumann(maximally_mixed((4,))) == pytest.approx(2, abs=1e-12)
    assert von_neumann(werner(0.5)) == pytest.approx(1.5487949406953985, abs=1e-12)


def test_von_neumann_bounds():
    for seed in range(30):
        rho = random_density(5, seed=seed)
        assert 0 <= von_neumann(rho) <= math.log2(5) + 1e-12


def test_shannon_examples():
    assert shannon([1, 0]) == 0
    assert shannon([0.5, 0.5]) == pytest.approx(1)
    assert shannon([0.8, 0.2]) == pytest.approx(0.7219280948873623, abs=1e-12)


def test_conditional_bell():
    assert conditional(bell()) == pytest.approx(-1, abs=1e-10)


def test_conditional_product():
    a, b = random_density(3, seed=1), random_density(2, seed=2)
    assert conditional(product(a, b)) == pytest.approx(von_neumann(a), abs=1e-10)


@pytest.mark.parametrize("eta", np.linspace(0, 1, 21))
def test_conditional_werner(eta):
    def xl(x):
        return x * math.log2(x) if x > 0 else 0.0

    expected = -3 * xl((1 - eta) / 4) - xl((1 + 3 * eta) / 4) - 1
    assert conditional(werner(eta)) == pytest.approx(expected, abs=1e-10)


def test_conditional_requires_bipartite():
    with pytest.raises(InputError):
        conditional(pure([1, 0]))


def test_relative_examples():
    rho = random_density(3, seed=8)
    assert relative(rho, rho) == pytest.approx(0, abs=1e-12)
    assert relative(pure([1, 0]), maximally_mixed((2,))) == pytest.approx(1, abs=1e-12)
    assert relative(maximally_mixed((2,)), pure([1, 0])) == math.inf


def test_relative_against_scipy_logm():
    # independent route: dense matrix logarithm on full-rank states
    for seed in range(10):
        rng = np.random.default_rng(seed)
        rho, sigma = random_density(3, seed=rng), random_density(3, seed=rng)
        expected = np.trace(rho.mat @ (scipy.linalg.logm(rho.mat) - scipy.linalg.logm(sigma.mat))).real / math.log(2)
        assert relative(rho, sigma) == pytest.approx(expected, abs=1e-9)


def test_relative_klein():
    for seed in range(100):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(2, 5))
        rho, sigma = random_density(d, seed=rng), random_density(d, seed=rng)
        val = relative(rho, sigma)
        assert val >= -1e-9
        if np.max(np.abs(rho.mat - sigma.mat)) > 1e-8:
            assert val > 1e-9


def test_relative_dimension_mismatch():
    with pytest.raises(InputError):
        relative(random_density(2, seed=0), random_density(3, seed=0))


def test_entropy_increment_identity():
    for seed in range(50):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(2, 5))
        rho = random_density(d, int(rng.integers(1, d + 1)), rng)
        m = haar_random_basis(d, rng)
        post = dephase(m, rho)
        assert relative(rho, post) == pytest.approx(von_neumann(post) - von_neumann(rho), abs=1e-9)
        assert shannon(outcome_distribution(m, rho)) == pytest.approx(von_neumann(post), abs=1e-10)


def test_overlap_c_examples():
    assert overlap_c(Z, Z) == pytest.approx(1)
    assert overlap_c(HADAMARD, Z) == pytest.approx(0.5)
    assert overlap_c(HADAMARD, pi2_basis()) == pytest.approx((2 + math.sqrt(3)) / 4, abs=1e-14)
    with pytest.raises(InputError):
        overlap_c(Z, computational_basis(3))


def test_overlap_c_range():
    for seed in range(20):
        a, b = haar_random_basis(3, seed), haar_random_basis(3, seed + 100)
        assert 1 / 3 - 1e-12 <= overlap_c(a, b) <= 1


def test_ell_u_mub_pair():
    for seed in range(5):
        rho = random_density(2, seed=seed)
        assert ell_u([HADAMARD, Z], rho) == pytest.approx(1, abs=1e-12)
        assert pair_bound_b(Z, HADAMARD, rho) == pytest.approx(1, abs=1e-12)
    assert ell_u_tilde([HADAMARD, Z]) == pytest.approx(1, abs=1e-12)


def test_ell_u_identical_bases():
    rho = random_density(3, seed=4)
    m = haar_random_basis(3, 9)
    assert ell_u_tilde([m, m]) == pytest.approx(0, abs=1e-12)
    assert pair_bound_b(m, m, rho) == pytest.approx(0, abs=1e-12)
    assert ell_u([m, m, m], rho) == pytest.approx(0, abs=1e-12)


def test_pair_bound_pi2():
    val = pair_bound_b(HADAMARD, pi2_basis(), maximally_mixed((2,)))
    assert val == pytest.approx(0.10003137304700833, abs=1e-12)


def test_pair_bound_n2_reduction():
    rho = random_density(3, seed=2)
    a, b = haar_random_basis(3, 1), haar_random_basis(3, 2)
    p = outcome_distribution(b, rho)
    c = overlap_matrix(a, b)
    expected = -sum(p[l] * math.log2(c[:, l].max()) for l in range(3))
    assert pair_bound_b(a, b, rho) == pytest.approx(expected, abs=1e-12)
    assert 0 <= pair_bound_b(a, b, rho) <= math.log2(3)


@pytest.mark.parametrize("n,d", [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2)])
def test_ell_u_brute_force(n, d):
    for seed in range(10):
        rng = np.random.default_rng(seed)
        ordering = [haar_random_basis(d, rng) for _ in range(n)]
        rho = random_density(d * 2, seed=rng, dims=(d, 2))
        p = outcome_distribution(ordering[-1], rho)
        assert ell_u(ordering, rho) == pytest.approx(ell_brute(ordering, p), abs=1e-12)
        assert ell_u_tilde(ordering) == pytest.approx(ell_brute(ordering, p, tilde=True), abs=1e-12)


def test_ell_u_dominates_tilde():
    rng = np.random.default_rng(77)
    triple = [haar_random_basis(2, rng) for _ in range(3)]
    floor = ell_u_tilde(triple)
    for _ in range(100):
        assert ell_u(triple, random_density(2, int(rng.integers(1, 3)), rng)) >= floor - 1e-9


def test_ell_u_needs_two():
    with pytest.raises(InputError):
        ell_u([Z], pure([1, 0]))
    with pytest.raises(InputError):
        chain_weights([Z])
