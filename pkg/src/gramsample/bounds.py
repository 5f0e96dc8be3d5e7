"""Sample-count bounds and error curves for column sampling.

Gram product (two-norm relative error ``<= eps`` with probability ``>= 1 - delta``):

======  ==========================================================
thm41   ``c0(eps) * sr * ln(rank / delta) / (beta * eps^2)``
thm42   ``c0(eps) * sr * ln(4 sr / delta) / (beta * eps^2)``
thm51   ``c0(eps) * rank * ln(rank / delta) / eps^2`` (leverage probabilities)
======  ==========================================================

Matrices ``Q`` with orthonormal rows (``m`` rows, coherence ``mu``):

* smallest singular value ``>= sqrt(1 - eps)``: ``c0`` (matmult) or ``c1``
  (chernoff) times ``m ln(m/delta) / (beta eps^2)``;
* condition number ``<= sqrt(1+eps)/sqrt(1-eps)``: ``c0 m ln(m/delta)`` (matmult)
  or ``c2 m ln(2m/delta)`` (chernoff), over ``beta eps^2``.

For uniform sampling the factor ``m / beta`` becomes ``n * mu``.
All counts are the ceiling of the real-valued bound.
"""

import enum
import math
from dataclasses import dataclass

from .errors import DomainError


class GramTheorem(str, enum.Enum):
    THM41 = "thm41"
    THM42 = "thm42"
    THM51 = "thm51"


class Method(str, enum.Enum):
    MATMULT = "matmult"
    CHERNOFF = "chernoff"


class Sampling(str, enum.Enum):
    NEARLY_OPTIMAL = "nearly-optimal"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class BoundQuery:
    """Inputs to the bounds. Fields a given bound does not use may be left as None."""

    epsilon: float | None = None
    delta: float = 0.01
    beta: float = 1.0
    stable_rank: float | None = None
    rank: int | None = None
    m: int | None = None
    mu: float | None = None
    n: int | None = None

    def __post_init__(self):
        if self.epsilon is not None and not 0.0 < self.epsilon <= 1.0:
            raise DomainError(f"epsilon must lie in (0, 1], got {self.epsilon}")
        if not 0.0 < self.delta < 1.0:
            raise DomainError(f"delta must lie in (0, 1), got {self.delta}")
        if not 0.0 < self.beta <= 1.0:
            raise DomainError(f"beta must lie in (0, 1], got {self.beta}")
        if self.stable_rank is not None and self.stable_rank < 1.0:
            raise DomainError(f"stable rank must be >= 1, got {self.stable_rank}")
        if self.rank is not None and self.rank < 1:
            raise DomainError(f"rank must be >= 1, got {self.rank}")
        if self.stable_rank is not None and self.rank is not None and self.stable_rank > self.rank * (1 + 1e-12):
            raise DomainError("stable rank cannot exceed rank")
        if self.m is not None and self.m < 1:
            raise DomainError(f"m must be >= 1, got {self.m}")
        if self.n is not None and self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if self.mu is not None and not 0.0 < self.mu <= 1.0:
            raise DomainError(f"coherence must lie in (0, 1], got {self.mu}")

    def need(self, *names):
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise DomainError(f"query is missing {', '.join(missing)}")
        return [getattr(self, name) for name in names]


@dataclass(frozen=True)
class BoundResult:
    theorem_tag: str
    constant_used: float
    required_c: int | None = None
    error_bound: float | None = None

    def __post_init__(self):
        if self.required_c is not None and self.required_c < 1:
            raise ValueError("required_c must be >= 1")
        if self.error_bound is not None and self.error_bound < 0:
            raise ValueError("error_bound must be >= 0")


def _series(x, sign):
    # sum_{k>=2} (sign x)^k / (k (k-1)), used where the closed form cancels
    total = 0.0
    term = x * x
    for k in range(2, 40):
        total += term / (k * (k - 1))
        term *= sign * x
    return total


def const_c0(eps):
    if not 0.0 < eps <= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1], got {eps}")
    return 2.0 + 2.0 * eps / 3.0


def const_c1(eps):
    """``eps^2 / ((1-eps) ln(1-eps) + eps)``; decreases from 2 to 1 on (0, 1)."""
    if not 0.0 < eps <= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {eps}")
    if eps == 1.0:
        return 1.0
    denom = _series(eps, 1.0) if eps < 1e-2 else (1.0 - eps) * math.log1p(-eps) + eps
    return eps * eps / denom


def const_c2(eps):
    """``eps^2 / ((1+eps) ln(1+eps) - eps)``; increases from 2 to ``1/(2 ln 2 - 1)``."""
    if not 0.0 < eps <= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1], got {eps}")
    denom = _series(eps, -1.0) if eps < 1e-2 else (1.0 + eps) * math.log1p(eps) - eps
    return eps * eps / denom


def epsilon_from_gamma(gamma):
    """Error level ``gamma + sqrt(gamma (6 + gamma))`` reached for a given ``gamma``."""
    if gamma < 0:
        raise DomainError(f"gamma must be >= 0, got {gamma}")
    return gamma + math.sqrt(gamma * (6.0 + gamma))


def _check_c(c):
    if c < 1:
        raise DomainError(f"sample count must be >= 1, got {c}")


def gamma1(q, c):
    sr, rank = q.need("stable_rank", "rank")
    _check_c(c)
    return sr * math.log(rank / q.delta) / (3.0 * q.beta * c)


def gamma2(q, c):
    (sr,) = q.need("stable_rank")
    _check_c(c)
    return sr * math.log(4.0 * sr / q.delta) / (3.0 * q.beta * c)


def gram_error_bound_thm41(q, c):
    return epsilon_from_gamma(gamma1(q, c))


def gram_error_bound_thm42(q, c):
    return epsilon_from_gamma(gamma2(q, c))


def _ceil(x):
    return max(1, math.ceil(x))


def samples_for_gram(q, theorem=GramTheorem.THM41):
    theorem = GramTheorem(theorem)
    (eps,) = q.need("epsilon")
    c0 = const_c0(eps)
    if theorem is GramTheorem.THM41:
        sr, rank = q.need("stable_rank", "rank")
        real = c0 * sr * math.log(rank / q.delta) / (q.beta * eps**2)
    elif theorem is GramTheorem.THM42:
        (sr,) = q.need("stable_rank")
        real = c0 * sr * math.log(4.0 * sr / q.delta) / (q.beta * eps**2)
    else:
        (rank,) = q.need("rank")
        real = c0 * rank * math.log(rank / q.delta) / eps**2
    return BoundResult(theorem.value, c0, required_c=_ceil(real))


def _check_eps_open(eps):
    if not 0.0 < eps < 1.0:
        raise DomainError(f"singular value and condition bounds need epsilon in (0, 1), got {eps}")


def _scale(q, sampling):
    # m / beta for nearly optimal probabilities, n * mu for uniform ones
    if Sampling(sampling) is Sampling.UNIFORM:
        n, mu = q.need("n", "mu")
        return n * mu
    (m,) = q.need("m")
    return m / q.beta


def _smin_real(q, eps, method, sampling):
    (m,) = q.need("m")
    const = const_c0(eps) if Method(method) is Method.MATMULT else const_c1(eps)
    return const, const * _scale(q, sampling) * math.log(m / q.delta) / eps**2


def _cond_real(q, eps, method, sampling):
    (m,) = q.need("m")
    if Method(method) is Method.MATMULT:
        const, log_arg = const_c0(eps), m / q.delta
    else:
        const, log_arg = const_c2(eps), 2.0 * m / q.delta
    return const, const * _scale(q, sampling) * math.log(log_arg) / eps**2


def samples_for_smin(q, method=Method.CHERNOFF, sampling=Sampling.NEARLY_OPTIMAL):
    """Count guaranteeing ``sigma_min(QS) >= sqrt(1 - eps)`` with probability ``1 - delta``."""
    (eps,) = q.need("epsilon")
    _check_eps_open(eps)
    const, real = _smin_real(q, eps, method, sampling)
    return BoundResult(f"smin-{Method(method).value}-{Sampling(sampling).value}", const, required_c=_ceil(real))


def samples_for_cond(q, method=Method.CHERNOFF, sampling=Sampling.NEARLY_OPTIMAL):
    """Count guaranteeing ``kappa(QS) <= sqrt(1+eps)/sqrt(1-eps)`` with probability ``1 - delta``."""
    (eps,) = q.need("epsilon")
    _check_eps_open(eps)
    const, real = _cond_real(q, eps, method, sampling)
    return BoundResult(f"cond-{Method(method).value}-{Sampling(sampling).value}", const, required_c=_ceil(real))


def _invert(count, c, lo=0.0, hi=1.0, iters=200):
    # smallest eps in (lo, hi) with count(eps) <= c; count is decreasing in eps
    if count(hi * (1 - 1e-15)) > c:
        return math.inf
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if count(mid) <= c:
            hi = mid
        else:
            lo = mid
    return hi


def smin_epsilon_for_count(q, c, method=Method.CHERNOFF, sampling=Sampling.NEARLY_OPTIMAL):
    """Smallest ``eps < 1`` whose singular value bound is certified by ``c`` samples (inf if none)."""
    _check_c(c)
    return _invert(lambda e: _smin_real(q, e, method, sampling)[1], c)


def cond_epsilon_for_count(q, c, method=Method.CHERNOFF, sampling=Sampling.NEARLY_OPTIMAL):
    """Smallest ``eps < 1`` whose condition number bound is certified by ``c`` samples (inf if none)."""
    _check_c(c)
    return _invert(lambda e: _cond_real(q, e, method, sampling)[1], c)


def gram_error_bound(q, c, theorem=GramTheorem.THM41):
    """Error bound at ``c`` samples as a :class:`BoundResult`."""
    theorem = GramTheorem(theorem)
    if theorem is GramTheorem.THM41:
        err = gram_error_bound_thm41(q, c)
    elif theorem is GramTheorem.THM42:
        err = gram_error_bound_thm42(q, c)
    else:
        (rank,) = q.need("rank")
        _check_c(c)
        err = epsilon_from_gamma(rank * math.log(rank / q.delta) / (3.0 * c))
    eps = min(err, 1.0)
    return BoundResult(theorem.value, const_c0(eps), error_bound=err)


def sigma_bounds_from_gram_error(err):
    """Singular value bracket ``(sqrt(max(0, 1-err)), sqrt(1+err))`` implied by a Gram error."""
    if err < 0:
        raise DomainError(f"error must be >= 0, got {err}")
    return math.sqrt(max(0.0, 1.0 - err)), math.sqrt(1.0 + err)


def kappa_bound_from_gram_error(err):
    lo, hi = sigma_bounds_from_gram_error(err)
    return hi / lo if lo > 0 else math.inf
