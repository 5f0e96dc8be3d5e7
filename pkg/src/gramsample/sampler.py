"""Index drawing, sampling matrices, and the Monte Carlo Gram approximation.

``approximate_gram`` samples ``c`` columns independently and with replacement
from ``p`` and returns ``X = (AS)(AS)^T`` where column ``j`` of ``S`` is
``e_{t_j} / sqrt(c p_{t_j})``, so that ``E[X] = A A^T``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadCountError, DimensionMismatchError, ZeroProbabilitySampledError
from .matcore import as_matrix
from .probmodel import ProbabilityVector, uniform_probs


@dataclass(frozen=True)
class SampleDraw:
    """Sampled column indices (zero-based) and the distribution they came from."""

    indices: np.ndarray
    source_probs: ProbabilityVector
    replacement: bool = True

    @property
    def c(self):
        return self.indices.size

    @property
    def n(self):
        return len(self.source_probs)


@dataclass(frozen=True)
class SamplingMatrix:
    """Compact ``n x c`` sampling matrix: one nonzero ``scales[j]`` at row ``indices[j]``."""

    indices: np.ndarray
    scales: np.ndarray
    n: int

    @property
    def c(self):
        return self.indices.size

    def materialize_dense(self):
        S = np.zeros((self.n, self.c))
        S[self.indices, np.arange(self.c)] = self.scales
        return S

    def apply(self, A):
        """``A S`` without forming ``S``."""
        return A[:, self.indices] * self.scales


def _check_count(c):
    if int(c) != c or c < 1:
        raise BadCountError(f"sample count must be a positive integer, got {c}")
    return int(c)


def _cumulative(probs):
    cum = np.cumsum(probs)
    return cum / cum[-1]


def draw_with_replacement(p, c, stream):
    """``c`` i.i.d. categorical draws by inverse CDF with binary search.

    The chosen index is the lowest one whose cumulative mass strictly exceeds
    the uniform deviate, so zero-probability indices are never selected.
    """
    c = _check_count(c)
    cum = _cumulative(p.probs)
    u = stream.uniform(c)
    idx = np.searchsorted(cum, u, side="right")
    # guards rounding in the last cumulative entry; never lands on a zero-mass index
    last = int(np.flatnonzero(p.probs > 0)[-1])
    np.minimum(idx, last, out=idx)
    return SampleDraw(idx.astype(np.intp), p, True)


def draw_uniform_without_replacement(n, c, stream):
    """Uniform random ``c``-subset of ``range(n)`` in random order (partial Fisher-Yates)."""
    c = _check_count(c)
    if c > n:
        raise BadCountError(f"cannot draw {c} distinct indices from {n}")
    perm = np.arange(n, dtype=np.intp)
    for i in range(c):
        j = i + stream.below(n - i)
        perm[i], perm[j] = perm[j], perm[i]
    return SampleDraw(perm[:c].copy(), uniform_probs(n), False)


def sampling_matrix(draw):
    """Scaled sampling matrix for a draw.

    With replacement the scale of column ``j`` is ``1/sqrt(c p_{t_j})``.
    Without replacement (uniform) every column is scaled by ``sqrt(n/c)``.
    """
    c = draw.c
    n = draw.n
    if draw.replacement:
        pt = draw.source_probs.probs[draw.indices]
        if np.any(pt <= 0):
            raise ZeroProbabilitySampledError("a sampled index has zero probability")
        scales = 1.0 / np.sqrt(c * pt)
    else:
        scales = np.full(c, np.sqrt(n / c))
    return SamplingMatrix(draw.indices, scales, n)


def gram_from_draw(A, draw):
    """``X = (AS)(AS)^T`` for an existing draw, symmetrized."""
    A = as_matrix(A)
    if A.shape[1] != draw.n:
        raise DimensionMismatchError(f"A has {A.shape[1]} columns, draw is over {draw.n}")
    AS = sampling_matrix(draw).apply(A)
    X = AS @ AS.T
    return 0.5 * (X + X.T)


def approximate_gram(A, p, c, stream):
    """Monte Carlo approximation of ``A A^T`` from ``c`` sampled columns.

    Returns
    -------
    X : ndarray (m, m)
    draw : SampleDraw
    """
    A = as_matrix(A)
    if A.shape[1] != len(p):
        raise DimensionMismatchError(f"A has {A.shape[1]} columns but {len(p)} probabilities")
    draw = draw_with_replacement(p, c, stream)
    return gram_from_draw(A, draw), draw


def sampled_submatrix(A, draw):
    """Unscaled selected columns ``A[:, t_1..t_c]``."""
    A = as_matrix(A)
    idx = draw.indices if isinstance(draw, SampleDraw) else np.asarray(draw, dtype=np.intp)
    if idx.size and (idx.min() < 0 or idx.max() >= A.shape[1]):
        raise IndexError(f"column index out of range for {A.shape[1]} columns")
    return A[:, idx]
