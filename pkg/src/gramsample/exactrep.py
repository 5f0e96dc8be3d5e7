"""Deterministic exact reconstruction of ``A A^T`` from selected columns.

For selected columns ``A_{t_1}, ..., A_{t_c}`` (repeats allowed):

* the minimal-Frobenius-norm weight matrix is ``W = (AS)^+ A A^T ((AS)^+)^T``;
* non-negative diagonal weights reproduce ``A A^T`` exactly iff
  ``V^T [sqrt(w_1) e_{t_1}, ..., sqrt(w_c) e_{t_c}]`` has orthonormal rows;
* with ``c = rank(A)`` the only candidate weights are inverse leverage scores.

Exactness is checked to a relative tolerance (default 1e-8), not exactly.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadShapeError,
    NotRankOneError,
    ZeroColumnSelectedError,
    ZeroLeverageError,
    ZeroMatrixError,
)
from .matcore import as_matrix, gram, pinv, thin_svd

EXACT_TOL = 1e-8


@dataclass(frozen=True)
class WeightMatrix:
    """Either diagonal weights (``values`` is a vector) or a full symmetric ``c x c`` matrix."""

    values: np.ndarray
    diagonal: bool

    @classmethod
    def from_diagonal(cls, weights):
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or np.any(w < 0):
            raise ValueError("diagonal weights must be a non-negative vector")
        return cls(w, True)

    @classmethod
    def from_full(cls, W):
        W = np.asarray(W, dtype=np.float64)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise ValueError("full weight matrix must be square")
        return cls(0.5 * (W + W.T), False)

    def as_dense(self):
        return np.diag(self.values) if self.diagonal else self.values

    def frobenius_norm(self):
        return float(np.linalg.norm(self.values))


def _indices(draw):
    idx = getattr(draw, "indices", draw)
    return np.asarray(idx, dtype=np.intp).ravel()


def reconstruction(A, indices, W):
    """``(A S) W (A S)^T`` with unscaled selector ``S``."""
    AS = as_matrix(A)[:, _indices(indices)]
    Wd = W.as_dense() if isinstance(W, WeightMatrix) else np.asarray(W, dtype=np.float64)
    if Wd.ndim == 1:
        Wd = np.diag(Wd)
    R = AS @ Wd @ AS.T
    return 0.5 * (R + R.T)


def reconstruction_residual(A, indices, W):
    """Relative Frobenius residual ``||A A^T - (AS) W (AS)^T||_F / ||A A^T||_F``."""
    G = gram(A)
    return float(np.linalg.norm(G - reconstruction(A, indices, W)) / np.linalg.norm(G))


def optimal_weight_matrix(A, draw, tol=None):
    """Minimal-norm ``W`` minimizing ``||A A^T - (AS) W (AS)^T||_F``."""
    A = as_matrix(A)
    if not np.any(A):
        raise ZeroMatrixError("optimal weights of the zero matrix")
    AS = A[:, _indices(draw)]
    P = pinv(AS, tol)
    return WeightMatrix.from_full(P @ gram(A) @ P.T)


def _selected_rows(V, indices):
    V = as_matrix(V, "V")
    idx = _indices(indices)
    if idx.size and (idx.min() < 0 or idx.max() >= V.shape[0]):
        raise IndexError(f"index out of range for {V.shape[0]} columns")
    return V, idx


def exactness_check(V, indices, weights, tol=EXACT_TOL):
    """True iff the weighted selected columns of ``V^T`` have orthonormal rows.

    ``V`` is the ``n x k`` right singular vector matrix. Equivalent to
    ``sum_j w_j A_{t_j} A_{t_j}^T == A A^T`` for any ``A`` with that ``V``.
    """
    V, idx = _selected_rows(V, indices)
    w = np.asarray(weights, dtype=np.float64).ravel()
    k = V.shape[1]
    if idx.size < k:
        raise BadShapeError(f"need at least k={k} columns, got {idx.size}")
    if w.size != idx.size:
        raise BadShapeError(f"{w.size} weights for {idx.size} indices")
    if np.any(w < 0):
        raise ValueError("weights must be non-negative")
    M = V[idx].T * np.sqrt(w)
    return bool(np.max(np.abs(M @ M.T - np.eye(k))) <= tol)


def subset_weights(V, indices, tol=EXACT_TOL):
    """Weights ``1/||V^T e_{t_j}||^2`` for ``k`` distinct indices, and whether they are exact.

    With exactly ``k`` columns these are the only weights that can work, so
    ``valid`` says whether the subset admits an exact representation at all.
    """
    V, idx = _selected_rows(V, indices)
    k = V.shape[1]
    if idx.size != k or np.unique(idx).size != k:
        raise BadShapeError(f"need exactly k={k} distinct indices, got {idx.tolist()}")
    lev = np.sum(V[idx] ** 2, axis=1)
    if np.any(lev <= tol**2):
        raise ZeroLeverageError("a selected column of V^T is zero")
    w = 1.0 / lev
    return w, exactness_check(V, idx, w, tol)


def rank_one_weights(A, indices, tol=EXACT_TOL):
    """Exact weights ``||A||_F^2 / (c ||A_{t_j}||^2)`` for a rank-one ``A``."""
    A = as_matrix(A)
    svd = thin_svd(A, tol)
    if svd.k != 1:
        raise NotRankOneError(f"numerical rank is {svd.k}")
    idx = _indices(indices)
    col_sq = np.sum(A[:, idx] ** 2, axis=0)
    fro_sq = float(np.sum(A * A))
    if np.any(col_sq <= (tol**2) * fro_sq):
        raise ZeroColumnSelectedError("a selected column is zero")
    return fro_sq / (idx.size * col_sq)
