"""Repeated-trial error experiments and probability comparisons."""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..bounds import BoundQuery, gram_error_bound_thm41, gram_error_bound_thm42
from ..errors import ExperimentError
from ..matcore import gram, relative_error_2norm, summarize
from ..probmodel import ProbKind, effective_beta, leverage_probs, make_probs, optimal_probs
from ..rng import RandomStream
from ..sampler import approximate_gram
from .io import read_matrix
from .synth import synth_matrix


@dataclass(frozen=True)
class TrialStats:
    strategy: str
    c: int
    trials: int
    min_error: float
    mean_error: float
    max_error: float
    bound_thm41: float
    bound_thm42: float
    success_rate: float | None = None


@dataclass
class ExperimentConfig:
    """What to run. Exactly one of ``matrix_path`` and ``synthetic`` is set.

    ``synthetic`` is a mapping with keys ``m``, ``n``, ``spectrum`` and
    optionally ``seed``.
    """

    c_grid: list
    matrix_path: str | None = None
    synthetic: dict | None = None
    trials: int = 100
    seed: int = 0
    delta: float = 0.01
    strategies: list = field(default_factory=lambda: ["optimal", "leverage"])
    beta: float = 0.5
    epsilon: float | None = None
    output: str | None = None
    format: str = "csv"
    workers: int = 1

    def __post_init__(self):
        if (self.matrix_path is None) == (self.synthetic is None):
            raise ValueError("set exactly one of matrix_path and synthetic")
        if not self.c_grid or any(int(c) != c or c < 1 for c in self.c_grid):
            raise ValueError("c grid entries must be positive integers")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        for s in self.strategies:
            ProbKind(s)
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.format!r}")

    @classmethod
    def from_dict(cls, data, base_dir=None):
        data = dict(data)
        path = data.pop("matrix", None) or data.pop("matrix_path", None)
        if path is not None and base_dir is not None and not Path(path).is_absolute():
            path = str(Path(base_dir) / path)
        return cls(matrix_path=path, **data)

    @classmethod
    def from_json(cls, path):
        path = Path(path)
        return cls.from_dict(json.loads(path.read_text()), base_dir=path.parent)

    def load_matrix(self):
        if self.matrix_path is not None:
            return read_matrix(self.matrix_path)
        syn = self.synthetic
        return synth_matrix(syn["m"], syn["n"], syn["spectrum"], syn.get("seed", self.seed))


def _run_cell(A, G, p, c, trials, seed):
    errors = np.empty(trials)
    for t in range(trials):
        try:
            X, _ = approximate_gram(A, p, c, RandomStream(seed, t))
            errors[t] = relative_error_2norm(X, G)
        except Exception as exc:
            raise ExperimentError(f"trial failed (c={c}, trial={t}, seed={seed}): {exc}") from exc
    return errors


def run_error_experiment(cfg, A=None):
    """Run ``cfg.trials`` Monte Carlo trials per (strategy, c) and aggregate.

    Trial ``t`` uses the stream ``(cfg.seed, t)``, so results do not depend on
    ``cfg.workers`` or on scheduling. The bound overlays use the matrix's
    stable rank and rank, ``cfg.delta``, and the largest ``beta`` the strategy's
    probabilities satisfy.
    """
    if A is None:
        A = cfg.load_matrix()
    G = gram(A)
    summ = summarize(A)
    cells = []
    for strategy in cfg.strategies:
        p = make_probs(A, strategy, beta=cfg.beta)
        beta = min(1.0, effective_beta(p, A))
        for c in cfg.c_grid:
            cells.append((strategy, int(c), p, beta))

    def work(cell):
        return _run_cell(A, G, cell[2], cell[1], cfg.trials, cfg.seed)

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            all_errors = list(pool.map(work, cells))
    else:
        all_errors = [work(cell) for cell in cells]

    stats = []
    for (strategy, c, _, beta), errors in zip(cells, all_errors):
        if beta > 0:
            q = BoundQuery(delta=cfg.delta, beta=beta, stable_rank=summ.stable_rank, rank=summ.rank)
            b41, b42 = gram_error_bound_thm41(q, c), gram_error_bound_thm42(q, c)
        else:
            b41 = b42 = math.inf
        rate = None
        if cfg.epsilon is not None:
            rate = float(np.mean(errors <= cfg.epsilon))
        stats.append(
            TrialStats(
                strategy=ProbKind(strategy).value,
                c=c,
                trials=cfg.trials,
                min_error=float(errors.min()),
                mean_error=float(errors.mean()),
                max_error=float(errors.max()),
                bound_thm41=b41,
                bound_thm42=b42,
                success_rate=rate,
            )
        )
    return stats


def probability_ratio_report(A, tol=None):
    """Sorted ratios of leverage over optimal probabilities; zero columns are left out."""
    p_opt = optimal_probs(A).probs
    p_lev = leverage_probs(A, tol).probs
    nz = p_opt > 0
    return np.sort(p_lev[nz] / p_opt[nz])
