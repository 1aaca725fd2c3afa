import numpy as np
import pytest

from qdisturb.entropy import conditional, von_neumann
from qdisturb.errors import InputError, PreconditionError
from qdisturb.qstate import (
    DensityMatrix, bell, bloch_qubit, maximally_mixed, product, pure, random_density, reduced, werner,
)


def test_pure_examples():
    np.testing.assert_allclose(pure([1, 0]).mat, np.diag([1, 0]))
    np.testing.assert_allclose(pure(np.array([1, 1]) / np.sqrt(2)).mat, [[0.5, 0.5], [0.5, 0.5]])
    bell_unnorm = pure([2, 0, 0, 2], dims=(2, 2))
    np.testing.assert_allclose(bell_unnorm.mat, bell().mat, atol=1e-15)
    assert bell_unnorm.dims == (2, 2)


def test_pure_zero_vector():
    with pytest.raises(InputError):
        pure([0, 0])


def test_werner_limits():
    np.testing.assert_allclose(werner(1.0).mat, bell().mat, atol=1e-15)
    np.testing.assert_allclose(werner(0.0).mat, np.eye(4) / 4, atol=1e-15)


@pytest.mark.parametrize("eta", np.linspace(0, 1, 11))
def test_werner_spectrum(eta):
    w = werner(eta).spectrum.eigenvalues
    expected = sorted([(1 + 3 * eta) / 4] + 3 * [(1 - eta) / 4])
    np.testing.assert_allclose(w, expected, atol=1e-14)


def test_werner_half_spectrum():
    np.testing.assert_allclose(werner(0.5).spectrum.eigenvalues, [0.125, 0.125, 0.125, 0.625], atol=1e-14)


def test_werner_range():
    with pytest.raises(InputError):
        werner(1.2)


def test_bloch_qubit():
    np.testing.assert_allclose(bloch_qubit(1.0).mat, np.diag([1, 0]))
    np.testing.assert_allclose(bloch_qubit(0.0).mat, np.eye(2) / 2)
    np.testing.assert_allclose(bloch_qubit(0.6).mat, np.diag([0.8, 0.2]))
    with pytest.raises(InputError):
        bloch_qubit(-1.5)


def test_product_examples():
    p = product(pure([1, 0]), maximally_mixed((2,)))
    np.testing.assert_allclose(p.mat, np.diag([0.5, 0.5, 0, 0]))
    assert p.dims == (2, 2)
    a = random_density(2, seed=1)
    b = random_density(3, seed=2)
    assert conditional(product(a, b)) == pytest.approx(von_neumann(a), abs=1e-10)
    ab = product(a, b)
    assert abs(np.trace(ab.mat) - 1) < 1e-12 and ab.spectrum.eigenvalues[0] > -1e-12


def test_product_rejects_bipartite():
    with pytest.raises(InputError):
        product(bell(), pure([1, 0]))


@pytest.mark.parametrize("eta", [0.0, 0.3, 0.7476, 1.0])
def test_werner_marginal(eta):
    np.testing.assert_allclose(reduced(werner(eta), 1).mat, np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(reduced(werner(eta), 0).mat, np.eye(2) / 2, atol=1e-15)


def test_reduced_product_roundtrip():
    a = random_density(3, seed=5)
    b = random_density(2, seed=6)
    np.testing.assert_allclose(reduced(product(a, b), 0).mat, a.mat, atol=1e-12)
    np.testing.assert_allclose(reduced(product(a, b), 1).mat, b.mat, atol=1e-12)


def test_reduced_needs_bipartite():
    with pytest.raises(InputError):
        reduced(pure([1, 0]), 0)


def test_random_density_properties():
    r1 = random_density(4, rank=1, seed=3)
    assert r1.purity() == pytest.approx(1.0, abs=1e-10)
    full = random_density(4, rank=4, seed=3)
    assert full.spectrum.eigenvalues[0] > 0
    assert abs(np.trace(full.mat) - 1) < 1e-12
    np.testing.assert_array_equal(random_density(3, 2, seed=9).mat, random_density(3, 2, seed=9).mat)
    with pytest.raises(InputError):
        random_density(3, 4, seed=0)


@pytest.mark.parametrize(
    "mat,match",
    [
        (np.diag([0.6, 0.6]), "trace residual 0.2"),
        (np.array([[0.5, 0.5], [0, 0.5]]), "Hermitian"),
        (np.diag([1.5, -0.5]), "positive semidefinite"),
    ],
)
def test_density_invariants(mat, match):
    with pytest.raises(PreconditionError, match=match):
        DensityMatrix((2,), mat)


def test_density_dims_mismatch():
    with pytest.raises(InputError):
        DensityMatrix((2, 3), np.eye(4) / 4)
