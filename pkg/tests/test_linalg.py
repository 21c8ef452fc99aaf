"""Tests for simulators.linalg."""

import numpy as np
import pytest

from conftest import random_density, random_unitary
from simulators import linalg
from simulators.errors import ConvergenceError, DimensionError, NotHermitianError
from simulators.linalg import FactorShape
from simulators.states import PAULI_X

KET0 = np.array([[1, 0], [0, 0]], dtype=complex)
KET1 = np.array([[0, 0], [0, 1]], dtype=complex)


def test_kron_identity():
    """I2 x I2 is I4."""
    np.testing.assert_array_equal(linalg.kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_basis_projector():
    """|0><0| x |1><1| projects onto |01>."""
    expected = np.zeros((4, 4))
    expected[1, 1] = 1.0
    np.testing.assert_array_equal(linalg.kron(KET0, KET1), expected)


def test_kron_trace_and_mixed_product(rng):
    """tr(A x B) = tr A tr B and (A x B)(C x D) = AC x BD."""
    a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
    np.testing.assert_allclose(np.trace(linalg.kron(a, b)), np.trace(a) * np.trace(b), atol=1e-12)
    np.testing.assert_allclose(linalg.kron(a, b) @ linalg.kron(c, d), linalg.kron(a @ c, b @ d), atol=1e-12)


def test_kron_associative(rng):
    a, b, c = (rng.normal(size=(2, 3)) for _ in range(3))
    np.testing.assert_allclose(linalg.kron(linalg.kron(a, b), c), linalg.kron(a, linalg.kron(b, c)), atol=1e-12)
    np.testing.assert_allclose(linalg.kron_all(a, b, c), linalg.kron(a, linalg.kron(b, c)), atol=1e-12)


def test_matmul_rejects_mismatched_dimensions():
    with pytest.raises(DimensionError):
        linalg.matmul(np.eye(2), np.eye(3))


def test_factor_shape_rejects_nonpositive():
    with pytest.raises(DimensionError):
        FactorShape((2, 0))


def test_partial_trace_product_state(rng):
    """Tracing out the second factor of rho1 x rho2 returns rho1."""
    rho1, rho2 = random_density(rng, 2), random_density(rng, 3)
    reduced = linalg.partial_trace(np.kron(rho1, rho2), FactorShape((2, 3)), [0])
    np.testing.assert_allclose(reduced, rho1, atol=1e-12)
    reduced = linalg.partial_trace(np.kron(rho1, rho2), FactorShape((2, 3)), [1])
    np.testing.assert_allclose(reduced, rho2, atol=1e-12)


def test_partial_trace_bell_marginal(bell_state):
    for keep in ([0], [1]):
        np.testing.assert_allclose(linalg.partial_trace(bell_state.matrix, bell_state.shape, keep),
                                   np.eye(2) / 2, atol=1e-15)


def test_partial_trace_matches_index_summation(rng):
    """Keep the middle factor of a random 2x3x2 state and compare with explicit summation."""
    shape = FactorShape((2, 3, 2))
    rho = random_density(rng, shape.size)
    tensor = rho.reshape(2, 3, 2, 2, 3, 2)
    expected = np.zeros((3, 3), dtype=complex)
    for i in range(2):
        for k in range(2):
            expected += tensor[i, :, k, i, :, k]
    reduced = linalg.partial_trace(rho, shape, [1])
    np.testing.assert_allclose(reduced, expected, atol=1e-12)
    assert abs(np.trace(reduced) - 1.0) < 1e-12
    assert np.min(np.linalg.eigvalsh(reduced)) > 0


def test_partial_trace_keeps_factor_order(rng):
    shape = FactorShape((2, 2, 2))
    a, b, c = (random_density(rng, 2) for _ in range(3))
    rho = linalg.kron_all(a, b, c)
    np.testing.assert_allclose(linalg.partial_trace(rho, shape, [2, 0]), np.kron(a, c), atol=1e-12)


def test_partial_trace_errors(bell_state):
    with pytest.raises(DimensionError):
        linalg.partial_trace(bell_state.matrix, bell_state.shape, [2])
    with pytest.raises(DimensionError):
        linalg.partial_trace(bell_state.matrix, FactorShape((2, 3)), [0])
    with pytest.raises(DimensionError):
        linalg.partial_trace(bell_state.matrix, bell_state.shape, [])


def test_partial_transpose_product_state(rng):
    rho1, rho2 = random_density(rng, 2), random_density(rng, 2)
    result = linalg.partial_transpose(np.kron(rho1, rho2), FactorShape.qubits(2), 1)
    np.testing.assert_allclose(result, np.kron(rho1, rho2.T), atol=1e-15)
    assert np.min(np.linalg.eigvalsh(result)) > 0


def test_partial_transpose_involution_and_full_transpose(rng):
    shape = FactorShape((2, 3))
    rho = random_density(rng, 6)
    twice = linalg.partial_transpose(linalg.partial_transpose(rho, shape, 0), shape, 0)
    np.testing.assert_array_equal(twice, rho)
    both = linalg.partial_transpose(linalg.partial_transpose(rho, shape, 0), shape, 1)
    np.testing.assert_array_equal(both, rho.T)
    single = linalg.partial_transpose(rho, shape, 1)
    assert linalg.hermiticity_defect(single) < 1e-15
    assert abs(np.trace(single) - np.trace(rho)) < 1e-15


def test_partial_transpose_bell_spectrum(bell_state):
    spectrum = linalg.hermitian_eigenvalues(bell_state.partial_transpose(1))
    np.testing.assert_allclose(spectrum, [-0.5, 0.5, 0.5, 0.5], atol=1e-12)


def test_partial_transpose_bad_factor(bell_state):
    with pytest.raises(DimensionError):
        linalg.partial_transpose(bell_state.matrix, bell_state.shape, 2)


def test_eigenvalues_identity_and_diagonal():
    np.testing.assert_allclose(linalg.hermitian_eigenvalues(np.eye(4)), [1, 1, 1, 1])
    np.testing.assert_allclose(linalg.hermitian_eigenvalues(np.diag([3.0, -1.0, 2.0])), [-1, 2, 3])


def test_eigenvalues_pauli_x_squared():
    np.testing.assert_allclose(linalg.hermitian_eigenvalues(np.kron(PAULI_X, PAULI_X)),
                               [-1, -1, 1, 1], atol=1e-12)


def test_eigenvalues_match_numpy(rng):
    for dim in (2, 4, 8, 24):
        x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = (x + x.conj().T) / 2
        values = linalg.hermitian_eigenvalues(h)
        np.testing.assert_allclose(values, np.linalg.eigvalsh(h), atol=1e-9)
        assert abs(values.sum() - np.trace(h).real) < 1e-10


def test_eigenvalues_unitary_invariance(rng):
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = (x + x.conj().T) / 2
    u = random_unitary(rng, 4)
    conjugated = u @ h @ u.conj().T
    conjugated = (conjugated + conjugated.conj().T) / 2
    np.testing.assert_allclose(linalg.hermitian_eigenvalues(conjugated),
                               linalg.hermitian_eigenvalues(h), atol=1e-9)


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(NotHermitianError):
        linalg.hermitian_eigenvalues(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_eigenvalues_sweep_budget(rng):
    x = rng.normal(size=(6, 6))
    with pytest.raises(ConvergenceError):
        linalg.hermitian_eigenvalues(x + x.T, max_sweeps=0)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 7, 16])
def test_round_robin_covers_every_pair_once(n):
    seen = []
    for p, q in linalg._round_robin(n):
        members = list(p) + list(q)
        assert len(set(members)) == len(members)
        assert all(a < b for a, b in zip(p, q))
        seen.extend(zip(p.tolist(), q.tolist()))
    assert sorted(seen) == [(p, q) for p in range(n) for q in range(p + 1, n)]


def test_eigenvalues_odd_and_larger_dimensions(rng):
    for dim in (3, 5, 7, 64):
        x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = (x + x.conj().T) / 2
        np.testing.assert_allclose(linalg.hermitian_eigenvalues(h), np.linalg.eigvalsh(h), atol=1e-9)
