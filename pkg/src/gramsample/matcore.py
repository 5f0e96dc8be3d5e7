"""Dense matrices and the spectral quantities the rest of the package consumes.

Matrices are plain 2-D ``float64`` numpy arrays. :func:`as_matrix` is the single
gate that validates them (finite entries, at least one row and one column).
The thin SVD is a one-sided (Hestenes) Jacobi iteration, which is accurate for
the small dense matrices this package targets.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidMatrixError,
    NoConvergenceError,
    ZeroMatrixError,
)

EPS = np.finfo(np.float64).eps
MAX_SWEEPS = 60


def as_matrix(A, name="A"):
    """Return ``A`` as a finite 2-D float64 array, raising InvalidMatrixError otherwise."""
    try:
        A = np.asarray(A, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidMatrixError(f"{name} is not a real array: {exc}") from exc
    if A.ndim != 2:
        raise InvalidMatrixError(f"{name} must be 2-D, got shape {A.shape}")
    if A.shape[0] < 1 or A.shape[1] < 1:
        raise InvalidMatrixError(f"{name} must have at least one row and column")
    if not np.all(np.isfinite(A)):
        raise InvalidMatrixError(f"{name} has NaN or infinite entries")
    return A


@dataclass(frozen=True)
class ThinSVD:
    """Thin SVD ``A = U diag(sigma) V^T`` truncated to the numerical rank ``k``."""

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    @property
    def k(self):
        return self.sigma.shape[0]

    @property
    def shape(self):
        return (self.U.shape[0], self.V.shape[0])

    def reconstruct(self):
        return (self.U * self.sigma) @ self.V.T


@dataclass(frozen=True)
class SpectralSummary:
    spectral_norm: float
    frobenius_norm: float
    stable_rank: float
    rank: int
    leverage_scores: np.ndarray
    coherence: float


def gram(A):
    """Gram product ``A A^T``, symmetrized so eigen-solvers see exact symmetry."""
    A = as_matrix(A)
    G = A @ A.T
    return 0.5 * (G + G.T)


def _jacobi_orthogonalize(B, max_sweeps):
    # One-sided Jacobi on the columns of B (p x q, p >= q). Returns the rotated
    # columns W = B J and the accumulated orthogonal J.
    W = np.array(B, dtype=np.float64, order="F", copy=True)
    p, q = W.shape
    J = np.eye(q, order="F")
    tol_rel = max(p, 1) * EPS
    tol_abs = (EPS * np.linalg.norm(W)) ** 2
    for _ in range(max_sweeps):
        rotated = False
        for i in range(q - 1):
            wi = W[:, i]
            for j in range(i + 1, q):
                wj = W[:, j]
                alpha = wi @ wi
                beta = wj @ wj
                gamma = wi @ wj
                if abs(gamma) <= max(tol_rel * np.sqrt(alpha * beta), tol_abs):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.hypot(1.0, zeta))
                cs = 1.0 / np.hypot(1.0, t)
                sn = cs * t
                new_i = cs * wi - sn * wj
                W[:, j] = sn * wi + cs * wj
                W[:, i] = new_i
                Ji = J[:, i].copy()
                J[:, i] = cs * Ji - sn * J[:, j]
                J[:, j] = sn * Ji + cs * J[:, j]
        if not rotated:
            return W, J
    raise NoConvergenceError(f"Jacobi SVD did not converge in {max_sweeps} sweeps")


def thin_svd(A, tol=None, max_sweeps=MAX_SWEEPS):
    """Thin SVD of ``A`` by one-sided Jacobi.

    Parameters
    ----------
    A : array_like, shape (m, n)
    tol : float, optional
        Relative rank threshold; singular values ``<= tol * sigma_1`` are
        discarded. Defaults to ``max(m, n) * eps``.
    max_sweeps : int
        Sweep budget before :class:`NoConvergenceError` is raised.

    Returns
    -------
    ThinSVD
        ``U`` (m x k), ``sigma`` (k, non-increasing, positive), ``V`` (n x k).
    """
    A = as_matrix(A)
    m, n = A.shape
    if not np.any(A):
        raise ZeroMatrixError("thin_svd of the zero matrix")
    if tol is None:
        tol = max(m, n) * EPS
    transpose = m < n
    B = A.T if transpose else A
    W, J = _jacobi_orthogonalize(B, max_sweeps)
    sigma = np.linalg.norm(W, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    k = int(np.sum(sigma > tol * sigma[0]))
    order = order[:k]
    sigma = sigma[:k]
    left = W[:, order] / sigma
    right = J[:, order]
    if transpose:
        U, V = right, left
    else:
        U, V = left, right
    return ThinSVD(np.ascontiguousarray(U), sigma, np.ascontiguousarray(V))


def spectral_summary(svd):
    sigma = svd.sigma
    spectral = float(sigma[0])
    frob = float(np.sqrt(np.sum(sigma**2)))
    lev = np.sum(svd.V**2, axis=1)
    return SpectralSummary(
        spectral_norm=spectral,
        frobenius_norm=frob,
        stable_rank=frob**2 / spectral**2,
        rank=svd.k,
        leverage_scores=lev,
        coherence=float(lev.max()),
    )


def summarize(A, tol=None):
    """Shortcut for ``spectral_summary(thin_svd(A, tol))``."""
    return spectral_summary(thin_svd(A, tol))


def sym_norm2(M):
    """Two-norm of a symmetric matrix via its full eigendecomposition."""
    M = 0.5 * (M + M.T)
    return float(np.max(np.abs(np.linalg.eigvalsh(M))))


def relative_error_2norm(X, G):
    """Two-norm relative error ``||X - G||_2 / ||G||_2`` of symmetric matrices."""
    X = as_matrix(X, "X")
    G = as_matrix(G, "G")
    if X.shape != G.shape or G.shape[0] != G.shape[1]:
        raise DimensionMismatchError(f"shapes {X.shape} and {G.shape} differ or are not square")
    denom = sym_norm2(G)
    if denom == 0.0:
        raise ZeroMatrixError("reference matrix has zero two-norm")
    return sym_norm2(X - G) / denom


def pinv(A, tol=None):
    """Moore-Penrose inverse ``V diag(1/sigma) U^T`` from :func:`thin_svd`."""
    A = as_matrix(A)
    if not np.any(A):
        return np.zeros(A.shape[::-1])
    svd = thin_svd(A, tol)
    return (svd.V / svd.sigma) @ svd.U.T
