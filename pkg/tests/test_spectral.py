"""Unit tests for the Jacobi-rotation eigensolver and perp restriction."""

import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose, assert_array_equal

from osslab.exceptions import KernelViolationError, NonSymmetricError, ShapeMismatchError, ZeroVectorError
from osslab.fourdim import canonical_osserman
from osslab.generators import random_rotation
from osslab.prng import stream
from osslab.spectral import default_group_tol, eigh, group_eigenvalues, perp_basis, restrict_to_perp
from osslab.tensor import jacobi


def _symmetric(size):
    return arrays(
        np.float64,
        (size, size),
        elements=st.floats(min_value=-10, max_value=10, allow_subnormal=False),
    ).map(lambda a: (a + a.T) / 2)


class TestEigh(unittest.TestCase):
    def test_identity(self):
        d = eigh(np.eye(3))
        assert_array_equal(d.eigenvalues, [1.0, 1.0, 1.0])
        self.assertEqual(d.groups, [[0, 1, 2]])

    def test_swap_matrix(self):
        d = eigh([[0.0, 1.0], [1.0, 0.0]])
        assert_allclose(d.eigenvalues, [-1.0, 1.0], atol=1e-15)
        self.assertEqual(d.groups, [[0], [1]])

    def test_recovers_rotated_diagonal(self):
        q = random_rotation(4, seed=21)
        d = eigh(q @ np.diag([0.0, 1.0, 2.0, 3.0]) @ q.T)
        assert_allclose(d.eigenvalues, [0.0, 1.0, 2.0, 3.0], atol=1e-10)
        for k in range(4):
            self.assertAlmostEqual(abs(float(d.eigenvectors[:, k] @ q[:, k])), 1.0, delta=1e-10)

    def test_degenerate_eigenspace_is_orthonormal(self):
        q = random_rotation(5, seed=4)
        M = q @ np.diag([2.0, 2.0, 2.0, -1.0, 5.0]) @ q.T
        d = eigh(M)
        self.assertEqual(d.groups, [[0], [1, 2, 3], [4]])
        span = d.eigenspace(1)
        assert_allclose(span.T @ span, np.eye(3), atol=1e-10)
        assert_allclose(M @ span, 2.0 * span, atol=1e-10)

    def test_deterministic(self):
        M = np.array([[2.0, 1.0, 0.5], [1.0, 3.0, -1.0], [0.5, -1.0, 1.0]])
        a, b = eigh(M), eigh(M.copy())
        assert_array_equal(a.eigenvalues, b.eigenvalues)
        assert_array_equal(a.eigenvectors, b.eigenvectors)

    def test_rejects_non_symmetric(self):
        with self.assertRaises(NonSymmetricError):
            eigh([[1.0, 2.0], [0.0, 1.0]])

    def test_rejects_non_square(self):
        with self.assertRaises(ShapeMismatchError):
            eigh(np.zeros((2, 3)))

    def test_empty_and_scalar(self):
        self.assertEqual(eigh(np.zeros((0, 0))).eigenvalues.size, 0)
        assert_array_equal(eigh([[4.0]]).eigenvalues, [4.0])

    def test_seeded_reconstruction(self):
        for k in range(1000):
            size = 2 + k % 7
            a = stream(k, 0).uniform(-1.0, 1.0, size=(size, size))
            M = (a + a.T) / 2
            assert_allclose(eigh(M).reconstruct(), M, atol=1e-10)
        self.assertEqual(eigh(np.diag(np.arange(8.0))).eigenvalues.size, 8)

    @settings(max_examples=60, deadline=None)
    @given(M=st.integers(min_value=2, max_value=8).flatmap(_symmetric))
    def test_decomposition_invariants(self, M):
        d = eigh(M)
        m = M.shape[0]
        scale = max(1.0, float(np.max(np.abs(M))))
        q = d.eigenvectors
        self.assertTrue(np.all(np.diff(d.eigenvalues) >= 0))
        assert_allclose(q.T @ q, np.eye(m), atol=1e-10)
        assert_allclose(M @ q, q * d.eigenvalues, atol=1e-10 * scale)
        self.assertAlmostEqual(float(np.sum(d.eigenvalues)), float(np.trace(M)), delta=1e-10 * scale)
        assert_allclose(d.reconstruct(), M, atol=1e-10 * scale)
        for k in range(m):
            lead = int(np.argmax(np.abs(q[:, k])))
            self.assertGreater(q[lead, k], 0.0)
        self.assertEqual(sorted(i for g in d.groups for i in g), list(range(m)))


class TestGroupEigenvalues(unittest.TestCase):
    def test_one_group(self):
        self.assertEqual(group_eigenvalues([1.0, 1.0, 1.0], 1e-8), [[0, 1, 2]])

    def test_singletons(self):
        self.assertEqual(group_eigenvalues([1.0, 2.0, 3.0], 1e-8), [[0], [1], [2]])

    def test_near_pair(self):
        self.assertEqual(group_eigenvalues([1.0, 1.0 + 5e-9, 2.0], 1e-8), [[0, 1], [2]])

    def test_chaining(self):
        self.assertEqual(group_eigenvalues([0.0, 0.6, 1.2], 1.0), [[0, 1, 2]])

    def test_default_tol(self):
        self.assertAlmostEqual(default_group_tol([0.0, 10.0]), 1e-7 + 1e-6)
        self.assertEqual(default_group_tol([]), 1e-7)


class TestPerp(unittest.TestCase):
    def test_perp_basis_is_orthonormal_complement(self):
        x = np.array([0.3, -1.2, 0.5, 2.0])
        b = perp_basis(x)
        self.assertEqual(b.shape, (4, 3))
        assert_allclose(b.T @ b, np.eye(3), atol=1e-14)
        assert_allclose(x @ b, np.zeros(3), atol=1e-14)

    def test_perp_basis_zero(self):
        with self.assertRaises(ZeroVectorError):
            perp_basis([0.0, 0.0, 0.0])

    def test_restrict_diagonal(self):
        assert_array_equal(restrict_to_perp(np.diag([0.0, 1.0, 2.0, 3.0]), [1, 0, 0, 0]), np.diag([1.0, 2.0, 3.0]))

    def test_restrict_space_form_operator(self):
        x = np.array([1.0, 2.0, -2.0]) / 3.0
        c = -1.5
        K = restrict_to_perp(c * (np.eye(3) - np.outer(x, x)), x)
        assert_allclose(K, c * np.eye(2), atol=1e-14)

    def test_restrict_canonical(self):
        x = np.array([1.0, 0.0, 1.0, 0.0]) / np.sqrt(2)
        M = jacobi(canonical_osserman(1, 2, 3), x)
        restricted = eigh(restrict_to_perp(M, x)).eigenvalues
        assert_allclose(restricted, [1.0, 2.0, 3.0], atol=1e-9)
        full = np.sort(np.linalg.eigvalsh(M))
        assert_allclose(full[1:], restricted, atol=1e-9)

    def test_kernel_violation(self):
        with self.assertRaises(KernelViolationError):
            restrict_to_perp(np.eye(3), [1, 0, 0])


if __name__ == "__main__":
    unittest.main()
