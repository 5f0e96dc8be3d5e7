import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_orthonormal
from gramsample.errors import DimensionMismatchError, InvalidMatrixError, NoConvergenceError, ZeroMatrixError
from gramsample.matcore import (
    as_matrix,
    gram,
    pinv,
    relative_error_2norm,
    spectral_summary,
    summarize,
    thin_svd,
)


class TestAsMatrix:
    def test_rejects_nan(self):
        with pytest.raises(InvalidMatrixError):
            as_matrix([[1.0, np.nan]])

    def test_rejects_empty_and_1d(self):
        with pytest.raises(InvalidMatrixError):
            as_matrix(np.zeros((0, 3)))
        with pytest.raises(InvalidMatrixError):
            as_matrix([1.0, 2.0])


class TestGram:
    def test_identity(self):
        np.testing.assert_array_equal(gram(np.eye(2)), np.eye(2))

    def test_hand_multiplication(self):
        np.testing.assert_array_equal(gram([[1, 2], [0, 3]]), [[5, 6], [6, 9]])

    def test_column_vector(self):
        np.testing.assert_array_equal(gram([[3], [4]]), [[9, 12], [12, 16]])

    def test_exactly_symmetric_and_psd(self, rng):
        for _ in range(50):
            m, n = rng.integers(1, 12, size=2)
            A = rng.standard_normal((m, n))
            G = gram(A)
            assert np.array_equal(G, G.T)
            tol = 1e-12 * np.linalg.norm(A, 2) ** 2
            assert np.linalg.eigvalsh(G).min() >= -tol


class TestThinSVD:
    def test_diagonal(self):
        svd = thin_svd(np.diag([3.0, 2.0]))
        np.testing.assert_allclose(svd.sigma, [3, 2], rtol=1e-15)
        assert svd.k == 2

    def test_rank_one_ones(self):
        svd = thin_svd([[1.0, 1.0], [1.0, 1.0]])
        assert svd.k == 1
        np.testing.assert_allclose(svd.sigma, [2.0], rtol=1e-15)

    @pytest.mark.parametrize("shape", [(5, 8), (8, 5), (1, 6), (6, 1), (7, 7), (12, 40)])
    def test_reconstruction_and_orthonormality(self, rng, shape):
        A = rng.standard_normal(shape)
        svd = thin_svd(A)
        assert svd.k == min(shape)
        assert np.linalg.norm(svd.reconstruct() - A) <= 1e-12 * np.linalg.norm(A)
        assert np.abs(svd.U.T @ svd.U - np.eye(svd.k)).max() <= 1e-12
        assert np.abs(svd.V.T @ svd.V - np.eye(svd.k)).max() <= 1e-12
        assert np.all(np.diff(svd.sigma) <= 0) and np.all(svd.sigma > 0)

    def test_singular_values_match_lapack(self, rng):
        # independent oracle: LAPACK's SVD
        for _ in range(20):
            A = rng.standard_normal(tuple(rng.integers(2, 15, size=2)))
            ref = np.linalg.svd(A, compute_uv=False)
            np.testing.assert_allclose(thin_svd(A).sigma, ref, rtol=1e-12, atol=1e-14 * ref[0])

    def test_numerical_rank_of_low_rank_product(self, rng):
        A = rng.standard_normal((9, 3)) @ rng.standard_normal((3, 14))
        assert thin_svd(A).k == 3

    def test_rank_tolerance_override(self):
        A = np.diag([1.0, 1e-6])
        assert thin_svd(A).k == 2
        assert thin_svd(A, tol=1e-4).k == 1

    def test_zero_matrix(self):
        with pytest.raises(ZeroMatrixError):
            thin_svd(np.zeros((3, 2)))

    def test_sweep_budget(self, rng):
        with pytest.raises(NoConvergenceError):
            thin_svd(rng.standard_normal((6, 6)), max_sweeps=1)


class TestSpectralSummary:
    def test_stable_rank_from_sigma(self, rng):
        U = random_orthonormal(rng, 4, 2)
        V = random_orthonormal(rng, 6, 2)
        s = summarize((U * [2.0, 1.0]) @ V.T)
        assert s.stable_rank == pytest.approx(5 / 4, rel=1e-12)
        assert s.spectral_norm == pytest.approx(2.0, rel=1e-12)
        assert s.frobenius_norm == pytest.approx(np.sqrt(5), rel=1e-12)

    def test_rank_one(self, rng):
        A = np.outer(rng.standard_normal(5), rng.standard_normal(7))
        s = summarize(A)
        assert s.rank == 1
        assert s.stable_rank == pytest.approx(1.0, rel=1e-12)

    def test_square_orthogonal_has_unit_leverage(self, rng):
        Q = random_orthonormal(rng, 5, 5)
        s = summarize(Q)
        np.testing.assert_allclose(s.leverage_scores, 1.0, atol=1e-12)
        assert s.coherence == pytest.approx(1.0, abs=1e-12)

    def test_invariants_over_random_shapes(self, rng):
        for _ in range(1000):
            m, n = rng.integers(1, 9, size=2)
            k = rng.integers(1, min(m, n) + 1)
            A = rng.standard_normal((m, k)) @ rng.standard_normal((k, n))
            s = spectral_summary(thin_svd(A))
            assert 1 - 1e-12 <= s.stable_rank <= s.rank * (1 + 1e-12)
            assert s.rank <= min(m, n)
            assert abs(s.leverage_scores.sum() - s.rank) <= 1e-8 * s.rank
            assert s.coherence <= 1 + 1e-8
            assert s.coherence >= s.rank / n - 1e-12
            assert np.all(s.leverage_scores >= 0)


class TestRelativeError:
    def test_equal(self, rng):
        A = rng.standard_normal((4, 6))
        G = gram(A)
        assert relative_error_2norm(G, G) == 0.0

    def test_scaling(self, rng):
        G = gram(rng.standard_normal((4, 6)))
        assert relative_error_2norm(2 * G, G) == pytest.approx(1.0, rel=1e-14)

    def test_diagonal_case(self):
        assert relative_error_2norm(np.diag([4.0, 2.0]), np.diag([4.0, 1.0])) == pytest.approx(0.25)

    def test_errors(self):
        with pytest.raises(ZeroMatrixError):
            relative_error_2norm(np.eye(2), np.zeros((2, 2)))
        with pytest.raises(DimensionMismatchError):
            relative_error_2norm(np.eye(2), np.eye(3))

    @settings(max_examples=60, deadline=None)
    @given(m=st.integers(1, 7), seed=st.integers(0, 2**32 - 1))
    def test_invariant_under_orthogonal_similarity(self, m, seed):
        r = np.random.default_rng(seed)
        G = gram(r.standard_normal((m, m + 2)))
        X = gram(r.standard_normal((m, 3)))
        R = random_orthonormal(r, m, m)
        base = relative_error_2norm(X, G)
        rotated = relative_error_2norm(R @ X @ R.T, R @ G @ R.T)
        assert abs(base - rotated) <= 1e-8 * max(1.0, base)


def test_pinv_matches_penrose_conditions(rng):
    A = rng.standard_normal((5, 3)) @ rng.standard_normal((3, 8))
    Z = pinv(A)
    np.testing.assert_allclose(A @ Z @ A, A, atol=1e-12)
    np.testing.assert_allclose(Z @ A @ Z, Z, atol=1e-12)
    np.testing.assert_allclose(A @ Z, (A @ Z).T, atol=1e-12)
    np.testing.assert_allclose(Z @ A, (Z @ A).T, atol=1e-12)
