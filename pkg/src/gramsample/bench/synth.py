"""Synthetic test matrices with prescribed singular values."""

import numpy as np

from ..errors import BadSpectrumError
from ..matcore import as_matrix
from ..rng import RandomStream


def random_orthonormal(rows, cols, gen):
    """``rows x cols`` matrix with orthonormal columns (QR of a Gaussian, signs fixed)."""
    Q, R = np.linalg.qr(gen.standard_normal((rows, cols)))
    return Q * np.where(np.diag(R) < 0, -1.0, 1.0)


def synth_matrix(m, n, spectrum, seed=0):
    """``U diag(spectrum) V^T`` with random orthonormal ``U`` (m x k) and ``V`` (n x k)."""
    s = np.asarray(spectrum, dtype=np.float64).ravel()
    k = s.size
    if k == 0 or k > min(m, n):
        raise BadSpectrumError(f"spectrum length {k} must be in [1, min(m, n) = {min(m, n)}]")
    if np.any(~np.isfinite(s)) or np.any(s < 0) or np.any(np.diff(s) > 0):
        raise BadSpectrumError("spectrum must be finite, non-negative and non-increasing")
    if s[0] == 0:
        raise BadSpectrumError("spectrum is identically zero")
    gen = RandomStream(seed, stream_id=0).generator()
    U = random_orthonormal(m, k, gen)
    V = random_orthonormal(n, k, gen)
    return as_matrix((U * s) @ V.T)


def spectrum_with_stable_rank(k, sr, head=1.0):
    """``k`` singular values: ``head`` followed by ``k-1`` equal values giving stable rank ``sr``."""
    if k < 1 or not 1.0 <= sr <= k:
        raise BadSpectrumError(f"stable rank {sr} impossible with {k} singular values")
    if k == 1:
        return np.array([head])
    tail = head * np.sqrt((sr - 1.0) / (k - 1))
    return np.concatenate(([head], np.full(k - 1, tail)))
