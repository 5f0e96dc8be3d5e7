import numpy as np
import pytest

from conftest import random_orthonormal
from gramsample.errors import BadShapeError, NotRankOneError, ZeroColumnSelectedError, ZeroLeverageError
from gramsample.exactrep import (
    WeightMatrix,
    exactness_check,
    optimal_weight_matrix,
    rank_one_weights,
    reconstruction_residual,
    subset_weights,
)
from gramsample.matcore import thin_svd

SQ14 = np.sqrt(14.0)
VT_NO_PAIR = np.array([[0.5, 0.5, 0.5, 0.5], [-1 / SQ14, -2 / SQ14, 3 / SQ14, 0.0]])


def make_exact_case(rng, k, n, dup):
    """V (n x k), indices and weights for which the weighted columns are exactly orthonormal.

    Column j of E has ``a_j`` at row ``t_j`` and ``sqrt(1 - a_j^2)`` at a private row,
    so E has orthonormal columns; V^T = R E^T keeps the selected columns orthogonal.
    """
    rows = rng.permutation(n)
    sel, private = rows[:k], rows[k : 2 * k]
    a = rng.uniform(0.2, 1.0, size=k)
    E = np.zeros((n, k))
    E[sel, np.arange(k)] = a
    E[private, np.arange(k)] = np.sqrt(1 - a**2)
    R = random_orthonormal(rng, k, k)
    V = E @ R.T
    idx, w = list(sel), list(1 / a**2)
    for _ in range(dup):
        j = rng.integers(k)
        split = rng.uniform(0.1, 0.9)
        idx.append(idx[j])
        w.append(w[j] * (1 - split))
        w[j] *= split
    return V, np.array(idx), np.array(w)


def matrix_with_v(rng, V, m):
    k = V.shape[1]
    U = random_orthonormal(rng, m, k)
    sigma = np.sort(rng.uniform(0.5, 3.0, size=k))[::-1]
    return (U * sigma) @ V.T


class TestOptimalWeightMatrix:
    def test_non_diagonal_example(self):
        Vt = np.array([[1, 0, 1, 0], [0, 1, 0, 1]]) / np.sqrt(2)
        for A in (Vt, np.diag([3.0, 2.0]) @ Vt):
            W = optimal_weight_matrix(A, [0, 1, 2])
            np.testing.assert_allclose(W.as_dense(), [[0.5, 0, 0.5], [0, 2, 0], [0.5, 0, 0.5]], atol=1e-12)
            assert W.frobenius_norm() ** 2 == pytest.approx(5.0, rel=1e-12)
            # diag(1, 2, 1) is also exact but has squared norm 6
            assert exactness_check(Vt.T, [0, 1, 2], [1, 2, 1])
            assert reconstruction_residual(A, [0, 1, 2], W) <= 1e-12

    def test_identity(self):
        np.testing.assert_allclose(optimal_weight_matrix(np.eye(2), [0, 1]).as_dense(), np.eye(2), atol=1e-14)

    def test_full_rank_subset_reconstructs(self, rng):
        A = rng.standard_normal((3, 6))
        for idx in ([0, 1, 2], [5, 2, 3], [1, 4, 5]):
            W = optimal_weight_matrix(A, idx)
            assert reconstruction_residual(A, idx, W) <= 1e-10

    def test_closed_forms(self, rng):
        A = rng.standard_normal((4, 3)) @ rng.standard_normal((3, 9))
        V = thin_svd(A).V
        idx = [0, 2, 5, 7, 7]
        W = optimal_weight_matrix(A, idx).as_dense()
        P = np.linalg.pinv(V[idx].T)
        np.testing.assert_allclose(W, P @ P.T, atol=1e-10)
        sq = [1, 3, 8]
        Vs = V[sq].T
        inv = np.linalg.inv(Vs)
        np.testing.assert_allclose(optimal_weight_matrix(A, sq).as_dense(), inv @ inv.T, atol=1e-9)

    def test_minimal_against_diagonal_candidates(self, rng):
        A = rng.standard_normal((4, 10))
        idx = [0, 3, 3, 6, 8]
        best = reconstruction_residual(A, idx, optimal_weight_matrix(A, idx))
        for _ in range(100):
            w = rng.uniform(0, 3, size=len(idx))
            assert best <= reconstruction_residual(A, idx, WeightMatrix.from_diagonal(w)) + 1e-12

    def test_rank_deficient_selection_is_least_squares(self, rng):
        A = rng.standard_normal((4, 10))
        idx = [1, 2]
        best = reconstruction_residual(A, idx, optimal_weight_matrix(A, idx))
        for _ in range(100):
            B = rng.standard_normal((2, 2))
            assert best <= reconstruction_residual(A, idx, B @ B.T) + 1e-12


class TestExactnessCheck:
    def test_repeated_column_example(self):
        Vt = np.array([[1.0, 0, 0, 0], [0, 1.0, 0, 0]])
        assert exactness_check(Vt.T, [0, 0, 1], [0.5, 0.5, 1.0])

    def test_three_column_example(self):
        assert exactness_check(VT_NO_PAIR.T, [0, 1, 2], [5 / 2, 2 / 5, 11 / 10])
        # the printed square roots are the multipliers, not the weights
        assert not exactness_check(VT_NO_PAIR.T, [0, 1, 2], np.sqrt([5 / 2, 2 / 5, 11 / 10]))

    def test_three_column_example_matrix_entries(self):
        M = VT_NO_PAIR[:, :3] * np.sqrt([5 / 2, 2 / 5, 11 / 10])
        expected = [
            [np.sqrt(5 / 8), np.sqrt(1 / 10), np.sqrt(11 / 40)],
            [-np.sqrt(5 / 28), -np.sqrt(4 / 35), np.sqrt(99 / 140)],
        ]
        np.testing.assert_allclose(M, expected, rtol=1e-14)

    def test_wrong_weights(self):
        assert not exactness_check(np.eye(2), [0, 1], [1.0, 2.0])

    def test_too_few_columns(self):
        with pytest.raises(BadShapeError):
            exactness_check(np.eye(3), [0, 1], [1.0, 1.0])

    def test_iff_reconstruction(self, rng):
        agree = 0
        trues = 0
        for trial in range(500):
            k = int(rng.integers(1, 4))
            n = int(rng.integers(2 * k + 1, 2 * k + 6))
            mode = trial % 4
            V, idx, w = make_exact_case(rng, k, n, dup=int(rng.integers(0, 3)))
            if mode == 1:
                j = rng.integers(idx.size)
                w[j] *= 1 + rng.choice([-1, 1]) * rng.uniform(0.01, 0.5)
            elif mode == 2:
                w = rng.uniform(0, 3, size=idx.size)
            elif mode == 3:
                V = random_orthonormal(rng, n, k)
            A = matrix_with_v(rng, V, m=int(rng.integers(k, k + 4)))
            verdict = exactness_check(V, idx, w)
            direct = reconstruction_residual(A, idx, w) <= 1e-8
            # same verdict with V recomputed from A (rotation invariance)
            assert exactness_check(thin_svd(A).V, idx, w) == verdict
            agree += verdict == direct
            trues += direct
        assert agree == 500
        assert trues >= 100


class TestSubsetWeights:
    def test_identity(self):
        w, valid = subset_weights(np.eye(2), [0, 1])
        np.testing.assert_allclose(w, [1, 1])
        assert valid

    def test_no_orthogonal_pair(self):
        for i in range(4):
            for j in range(i + 1, 4):
                _, valid = subset_weights(VT_NO_PAIR.T, [i, j])
                assert not valid

    def test_orthonormal_columns(self):
        Vt = np.array([[1.0, 0, 0], [0, 1.0, 0]])
        w, valid = subset_weights(Vt.T, [0, 1])
        np.testing.assert_allclose(w, [1, 1])
        assert valid

    def test_zero_leverage(self):
        Vt = np.array([[1.0, 0, 0], [0, 1.0, 0]])
        with pytest.raises(ZeroLeverageError):
            subset_weights(Vt.T, [0, 2])

    def test_valid_subset_gives_diagonal_optimum(self, rng):
        for _ in range(50):
            k = int(rng.integers(1, 4))
            V, idx, _ = make_exact_case(rng, k, 2 * k + 3, dup=0)
            A = matrix_with_v(rng, V, m=k + 2)
            w, valid = subset_weights(V, idx)
            assert valid
            W = optimal_weight_matrix(A, idx).as_dense()
            np.testing.assert_allclose(W, np.diag(w), atol=1e-8 * np.abs(w).max())


class TestRankOneWeights:
    A = np.array([[3.0, 4.0]])

    def test_single_column(self):
        w = rank_one_weights(self.A, [1])
        np.testing.assert_allclose(w, [25 / 16])

    def test_both_columns(self):
        w = rank_one_weights(self.A, [0, 1])
        np.testing.assert_allclose(w, [25 / 18, 25 / 32])
        assert w[0] * 9 + w[1] * 16 == pytest.approx(25.0)

    def test_largest_column_weight_is_inverse_coherence(self, rng):
        A = np.outer(rng.standard_normal(3), rng.standard_normal(8))
        lev = np.sum(thin_svd(A).V ** 2, axis=1)
        top = int(np.argmax(np.sum(A**2, axis=0)))
        np.testing.assert_allclose(rank_one_weights(A, [top]), [1 / lev.max()], rtol=1e-12)

    def test_always_exact(self, rng):
        for _ in range(100):
            A = np.outer(rng.standard_normal(rng.integers(1, 6)), rng.standard_normal(rng.integers(1, 15)))
            idx = rng.integers(0, A.shape[1], size=rng.integers(1, 6))
            assert reconstruction_residual(A, idx, rank_one_weights(A, idx)) <= 1e-10

    def test_errors(self, rng):
        with pytest.raises(NotRankOneError):
            rank_one_weights(np.eye(2), [0])
        with pytest.raises(ZeroColumnSelectedError):
            rank_one_weights([[1.0, 0.0, 2.0]], [1])
