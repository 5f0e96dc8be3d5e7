"""Command-line interface.

Column indices on the command line are 1-based; they are zero-based in the
Python API.
"""

import argparse
import math
import sys

import numpy as np

from . import bounds as bd
from .bench import ExperimentConfig, emit_results, read_matrix, run_error_experiment
from .bench.io import results_to_csv, results_to_json
from .errors import GramSampleError
from .exactrep import exactness_check, optimal_weight_matrix, reconstruction_residual, subset_weights
from .matcore import gram, relative_error_2norm, thin_svd
from .probmodel import ProbKind, make_probs
from .rng import RandomStream
from .sampler import approximate_gram

KINDS = [k.value for k in ProbKind]


def _fmt(x):
    return format(float(x), ".17g")


def _index_list(text):
    try:
        idx = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}") from None
    if not idx or min(idx) < 1:
        raise argparse.ArgumentTypeError("indices are 1-based positive integers")
    return idx


def _float_list(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


def cmd_probs(args, out):
    A = read_matrix(args.matrix)
    p = make_probs(A, args.kind, beta=args.beta)
    lines = ["index,probability"] + [f"{j + 1},{_fmt(v)}" for j, v in enumerate(p.probs)]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def cmd_approx(args, out):
    A = read_matrix(args.matrix)
    p = make_probs(A, args.kind, beta=args.beta)
    X, draw = approximate_gram(A, p, args.c, RandomStream(args.seed, args.stream_id))
    err = relative_error_2norm(X, gram(A))
    out.write(f"relative_error: {_fmt(err)}\n")
    out.write("indices: " + ",".join(str(i + 1) for i in draw.indices) + "\n")
    if args.emit_x:
        np.savetxt(args.emit_x, X, delimiter=",", fmt="%.17g")
    return 0


def cmd_bounds(args, out):
    q = bd.BoundQuery(
        epsilon=args.eps,
        delta=args.delta,
        beta=args.beta,
        stable_rank=args.sr,
        rank=args.rank,
        m=args.m,
        mu=args.mu,
        n=args.n,
    )
    if args.target == "gram":
        method = args.method or "thm41"
        if method not in ("thm41", "thm42", "thm51"):
            raise GramSampleError(f"gram bounds take --method thm41|thm42|thm51, not {method}")
        if args.c is not None:
            res = bd.gram_error_bound(q, args.c, method)
            out.write(f"theorem: {res.theorem_tag}\nerror_bound: {_fmt(res.error_bound)}\n")
        else:
            res = bd.samples_for_gram(q, method)
            out.write(f"theorem: {res.theorem_tag}\nrequired_c: {res.required_c}\nconstant: {_fmt(res.constant_used)}\n")
        return 0

    method = args.method or "chernoff"
    if method not in ("matmult", "chernoff"):
        raise GramSampleError(f"{args.target} bounds take --method matmult|chernoff, not {method}")
    if args.c is not None:
        invert = bd.smin_epsilon_for_count if args.target == "smin" else bd.cond_epsilon_for_count
        eps = invert(q, args.c, method, args.sampling)
        out.write(f"epsilon: {_fmt(eps)}\n")
        if args.target == "smin":
            lb = math.sqrt(1.0 - eps) if eps < 1 else 0.0
            out.write(f"sigma_min_lower_bound: {_fmt(lb)}\n")
        else:
            kappa = math.sqrt(1.0 + eps) / math.sqrt(1.0 - eps) if eps < 1 else math.inf
            out.write(f"kappa_upper_bound: {_fmt(kappa)}\n")
        return 0
    fn = bd.samples_for_smin if args.target == "smin" else bd.samples_for_cond
    res = fn(q, method, args.sampling)
    out.write(f"theorem: {res.theorem_tag}\nrequired_c: {res.required_c}\nconstant: {_fmt(res.constant_used)}\n")
    return 0


def cmd_exact_check(args, out):
    A = read_matrix(args.matrix)
    idx = np.array(args.indices) - 1
    if idx.max() >= A.shape[1]:
        raise GramSampleError(f"index {idx.max() + 1} exceeds {A.shape[1]} columns")
    svd = thin_svd(A)
    k = svd.k
    out.write(f"rank: {k}\nc: {idx.size}\n")
    if args.weights is not None:
        w = np.array(args.weights)
        verdict = exactness_check(svd.V, idx, w, args.tol)
        out.write(f"exact: {str(verdict).lower()}\n")
        out.write(f"residual: {_fmt(reconstruction_residual(A, idx, w))}\n")
        return 0 if verdict else 1
    if idx.size == k and np.unique(idx).size == k:
        w, valid = subset_weights(svd.V, idx, args.tol)
        out.write(f"exact: {str(valid).lower()}\n")
        out.write("weights: " + ",".join(_fmt(x) for x in w) + "\n")
        return 0 if valid else 1
    W = optimal_weight_matrix(A, idx)
    res = reconstruction_residual(A, idx, W)
    out.write(f"exact: {str(res <= args.tol).lower()}\n")
    out.write(f"optimal_weight_residual: {_fmt(res)}\n")
    out.write(f"optimal_weight_frobenius_sq: {_fmt(W.frobenius_norm() ** 2)}\n")
    return 0 if res <= args.tol else 1


def cmd_experiment(args, out):
    cfg = ExperimentConfig.from_json(args.config)
    if args.output is not None:
        cfg.output = args.output
    if args.format is not None:
        cfg.format = args.format
    stats = run_error_experiment(cfg)
    if cfg.output is None or cfg.output == "-":
        out.write(results_to_csv(stats) if cfg.format == "csv" else results_to_json(stats))
    else:
        emit_results(stats, cfg.format, cfg.output)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="gramsample", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("probs", help="sampling probabilities for a matrix")
    p.add_argument("matrix")
    p.add_argument("--kind", choices=KINDS, default="optimal")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_probs)

    p = sub.add_parser("approx", help="one Monte Carlo approximation and its relative error")
    p.add_argument("matrix")
    p.add_argument("-c", type=int, required=True)
    p.add_argument("--kind", choices=KINDS, default="optimal")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream-id", type=int, default=0)
    p.add_argument("--emit-x", metavar="PATH")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("bounds", help="sample counts or error bounds")
    p.add_argument("target", choices=["gram", "smin", "cond"])
    p.add_argument("--eps", type=float)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--sr", type=float)
    p.add_argument("--rank", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--mu", type=float)
    p.add_argument("--method", choices=["thm41", "thm42", "thm51", "matmult", "chernoff"])
    p.add_argument("--sampling", choices=["nearly-optimal", "uniform"], default="nearly-optimal")
    p.add_argument("--c", type=int, help="report the bound at this sample count instead")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("exact-check", help="exact reconstruction test for selected columns")
    p.add_argument("matrix")
    p.add_argument("--indices", type=_index_list, required=True)
    p.add_argument("--weights", type=_float_list)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_exact_check)

    p = sub.add_parser("experiment", help="repeated-trial error experiment from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--output")
    p.add_argument("--format", choices=["csv", "json"])
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (GramSampleError, OSError, ValueError) as exc:
        print(f"gramsample: error: {exc}", file=sys.stderr)
        return 2
