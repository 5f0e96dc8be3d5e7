"""Column-sampling probability families.

* ``optimal``: squared column norms over the squared Frobenius norm.
* ``leverage``: leverage scores of the right singular vectors over the rank.
* ``uniform``: ``1/n``.
* ``nearly_optimal``: a convex mix ``beta * optimal + (1 - beta) * uniform``,
  which satisfies ``p_j >= beta * p_j^opt`` for every column.

Zero columns get zero optimal and leverage probability; the sampler never
selects them.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BadBetaError, DimensionMismatchError, ZeroMatrixError
from .matcore import as_matrix, thin_svd

SUM_TOL = 1e-12


class ProbKind(str, enum.Enum):
    OPTIMAL = "optimal"
    LEVERAGE = "leverage"
    UNIFORM = "uniform"
    NEARLY_OPTIMAL = "nearly-optimal"


@dataclass(frozen=True)
class ProbabilityVector:
    probs: np.ndarray
    kind: ProbKind
    beta: float = 1.0

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probabilities must be a non-empty vector")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise ValueError("probabilities must be finite and non-negative")
        if abs(p.sum() - 1.0) > SUM_TOL * p.size:
            raise ValueError(f"probabilities sum to {p.sum():.17g}, not 1")
        if not 0.0 < self.beta <= 1.0:
            raise BadBetaError(f"beta must lie in (0, 1], got {self.beta}")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "kind", ProbKind(self.kind))

    def __len__(self):
        return self.probs.size


def _column_norms_sq(A):
    A = as_matrix(A)
    norms = np.sum(A * A, axis=0)
    total = norms.sum()
    if total == 0.0:
        raise ZeroMatrixError("all columns are zero")
    return norms, total


def optimal_probs(A):
    norms, total = _column_norms_sq(A)
    return ProbabilityVector(norms / total, ProbKind.OPTIMAL, 1.0)


def leverage_probs(A, tol=None):
    """Leverage-score probabilities ``||V^T e_j||^2 / k`` with ``k`` the numerical rank."""
    A = as_matrix(A)
    if not np.any(A):
        raise ZeroMatrixError("all columns are zero")
    svd = thin_svd(A, tol)
    lev = np.sum(svd.V**2, axis=1)
    # sum(lev) equals k up to rounding; dividing by the sum keeps the simplex exact
    return ProbabilityVector(lev / lev.sum(), ProbKind.LEVERAGE, 1.0)


def uniform_probs(n):
    if n < 1:
        raise ValueError("n must be at least 1")
    return ProbabilityVector(np.full(n, 1.0 / n), ProbKind.UNIFORM, 1.0)


def nearly_optimal_mix(A, beta):
    if not 0.0 < beta <= 1.0:
        raise BadBetaError(f"beta must lie in (0, 1], got {beta}")
    opt = optimal_probs(A).probs
    n = opt.size
    p = beta * opt + (1.0 - beta) / n
    return ProbabilityVector(p, ProbKind.NEARLY_OPTIMAL, float(beta))


def effective_beta(p, A):
    """Largest ``beta`` with ``p_j >= beta * p_j^opt`` over the non-zero columns of ``A``.

    For uniform probabilities on a matrix with orthonormal rows this is
    ``m / (n * coherence)``.
    """
    probs = p.probs if isinstance(p, ProbabilityVector) else np.asarray(p, dtype=np.float64)
    norms, total = _column_norms_sq(A)
    if probs.size != norms.size:
        raise DimensionMismatchError(f"{probs.size} probabilities for {norms.size} columns")
    nz = norms > 0
    return float(np.min(probs[nz] * total / norms[nz]))


def make_probs(A, kind, beta=1.0, tol=None):
    """Dispatch on a kind name (``optimal``, ``leverage``, ``uniform``, ``nearly-optimal``)."""
    kind = ProbKind(kind)
    if kind is ProbKind.OPTIMAL:
        return optimal_probs(A)
    if kind is ProbKind.LEVERAGE:
        return leverage_probs(A, tol)
    if kind is ProbKind.UNIFORM:
        return uniform_probs(as_matrix(A).shape[1])
    return nearly_optimal_mix(A, beta)
