"""Command-line entry point: generate, validate, bench.

Exit codes: 0 success, 1 failed validation or I/O error, 2 usage error.
The resolved seed is always echoed to stderr as 'seed=<u64>' so any run
can be reproduced from its logs. All randomness descends from that one
seed through fixed derivation paths.

Corruption hooks are negative controls for the validation suite. They
are only parsed when the environment variable RANK1GEN_TEST_HOOKS=1 is
set, never appear in help text, and apply only to the event-driven
simple model.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from ._backend import get_backend
from .alias import build_alias, dump_alias_tsv
from .baselines import generate_chung_lu_skip, generate_nr_oracle
from .bench import (
    KNOWN_LAWS,
    doubling_ratios,
    emit_report,
    paired_prep_margins,
    run_sweep,
)
from .errors import GraphGenError
from .generators import (
    CORRUPT_BY_NAME,
    CORRUPT_NONE,
    generate_er,
    generate_nr_multigraph,
    generate_nr_simple,
)
from .graphio import write_edges_binary, write_edges_text
from .randomness import RandomStream, resolve_seed
from .stats import ValidationConfig, run_validation
from .weights import load_weights

_GEN_MODELS = ("nr", "nr-multi", "er", "nr-oracle", "cl-skip")
_VAL_MODELS = ("nr", "nr-multi", "er", "nr-oracle")
_WEIGHT_MODELS = ("nr", "nr-multi", "nr-oracle", "cl-skip")

_HOOKS_ENV = "RANK1GEN_TEST_HOOKS"


def _hooks_enabled() -> bool:
    return os.environ.get(_HOOKS_ENV) == "1"


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="rank1gen",
        description="Event-driven random graph generation and validation.",
        allow_abbrev=False,
    )
    top.add_argument(
        "--version",
        action="version",
        version=f"rank1gen {__version__} (backend: {get_backend()})",
    )
    sub = top.add_subparsers(dest="subcommand", required=True)

    gen = sub.add_parser("generate", allow_abbrev=False,
                         help="sample one graph and write it out")
    gen.add_argument("--model", choices=_GEN_MODELS, required=True)
    gen.add_argument("--weights", help="weight file (weight models)")
    gen.add_argument("--weights-format", choices=("text", "bin"), default="text")
    gen.add_argument("--n", type=int, help="vertex count (er only)")
    gen.add_argument("--p", type=float, help="edge probability (er only)")
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", required=True, help="output edge-list path")
    gen.add_argument("--format", choices=("text", "bin"), default="text")
    gen.add_argument("--no-presize", action="store_true",
                     help="let the dedup set grow by rehashing")
    gen.add_argument("--dump-alias", metavar="PATH",
                     help="also write the alias table as TSV (weight models)")
    gen.add_argument("--corrupt", choices=sorted(CORRUPT_BY_NAME),
                     default=None, help=argparse.SUPPRESS)

    val = sub.add_parser("validate", allow_abbrev=False,
                         help="run the statistical check suite")
    val.add_argument("--model", choices=_VAL_MODELS, required=True)
    val.add_argument("--weights", help="weight file (weight models)")
    val.add_argument("--weights-format", choices=("text", "bin"), default="text")
    val.add_argument("--n", type=int, help="vertex count (er only)")
    val.add_argument("--p", type=float, help="edge probability (er only)")
    val.add_argument("--runs", type=int, default=100_000)
    val.add_argument("--seed", type=int, default=None)
    val.add_argument("--significance", type=float, default=1e-4)
    val.add_argument("--sigma-mult", type=float, default=4.0)
    val.add_argument("--json", metavar="PATH", help="write the report as JSON")
    val.add_argument("--corrupt", choices=sorted(CORRUPT_BY_NAME),
                     default=None, help=argparse.SUPPRESS)

    ben = sub.add_parser("bench", allow_abbrev=False,
                         help="doubling-ratio scaling benchmark")
    ben.add_argument("--sizes", default="1048576,2097152,4194304",
                     help="comma-separated ascending vertex counts")
    ben.add_argument("--mean-degree", type=float, default=10.0)
    ben.add_argument("--weights-law", choices=KNOWN_LAWS, default="uniform")
    ben.add_argument("--models", default="nr-event,cl-skip",
                     help="comma-separated model list")
    ben.add_argument("--reps", type=int, default=5)
    ben.add_argument("--seed", type=int, default=None)
    ben.add_argument("--csv", metavar="PATH", help="write per-cell medians")
    ben.add_argument("--plot", metavar="PATH", help="write (n, t_total) TSV")
    ben.add_argument("--no-presize", action="store_true")
    ben.add_argument("--untruncated-tail", action="store_true",
                     help="skip the heavy-tail truncation (stress test)")
    ben.add_argument("--prep-rounds", type=int, default=48,
                     help="paired rounds for the preprocessing comparison")
    ben.add_argument("--threads", type=int, default=1,
                     help="must be 1; timing runs refuse to parallelize")
    return top


def _usage_error(parser: argparse.ArgumentParser, message: str) -> int:
    parser.error(message)  # exits 2
    return 2


def _resolve_corrupt(args, parser) -> int:
    if args.corrupt is None:
        return CORRUPT_NONE
    if not _hooks_enabled():
        _usage_error(parser, f"--corrupt requires {_HOOKS_ENV}=1")
    if args.model != "nr":
        _usage_error(parser, "--corrupt applies only to --model nr")
    return CORRUPT_BY_NAME[args.corrupt]


def _load_model_inputs(args, parser):
    """Returns (w, n, p) with the conflicts rejected."""
    if args.model in _WEIGHT_MODELS:
        if args.n is not None or args.p is not None:
            _usage_error(parser, f"--n/--p conflict with --model {args.model}")
        if not args.weights:
            _usage_error(parser, f"--model {args.model} requires --weights")
        return load_weights(args.weights, args.weights_format), None, None
    if args.weights:
        _usage_error(parser, "--weights conflicts with --model er")
    if args.n is None or args.p is None:
        _usage_error(parser, "--model er requires --n and --p")
    return None, args.n, args.p


def _cmd_generate(args, parser) -> int:
    corrupt = _resolve_corrupt(args, parser)
    w, n, p = _load_model_inputs(args, parser)
    seed = resolve_seed(args.seed)
    print(f"seed={seed}", file=sys.stderr)

    # fail fast: claim the output path before any sampling happens
    try:
        out_fh = open(args.out, "w" if args.format == "text" else "wb",
                      encoding="utf-8" if args.format == "text" else None,
                      newline="\n" if args.format == "text" else None)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    alias_fh = None
    if args.dump_alias:
        if w is None:
            out_fh.close()
            _usage_error(parser, "--dump-alias needs a weight model")
        try:
            alias_fh = open(args.dump_alias, "w", encoding="utf-8")
        except OSError as exc:
            out_fh.close()
            print(f"error: cannot write {args.dump_alias}: {exc}", file=sys.stderr)
            return 1

    rng = RandomStream(seed)
    presize = not args.no_presize
    try:
        if args.model == "nr":
            outcome = generate_nr_simple(w, rng, presize=presize, _corrupt=corrupt)
        elif args.model == "nr-multi":
            outcome = generate_nr_multigraph(w, rng)
        elif args.model == "er":
            outcome = generate_er(n, p, rng, presize=presize)
        elif args.model == "nr-oracle":
            outcome = generate_nr_oracle(w, rng)
        else:
            outcome = generate_chung_lu_skip(w, rng)
        g = outcome.graph
        if args.format == "text":
            write_edges_text(out_fh, g.n, g.u, g.v, seed)
        else:
            write_edges_binary(out_fh, g.n, g.u, g.v, seed)
        out_fh.close()
        if alias_fh is not None:
            alias_fh.close()
            dump_alias_tsv(args.dump_alias, build_alias(w))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _cmd_validate(args, parser) -> int:
    corrupt = _resolve_corrupt(args, parser)
    w, n, p = _load_model_inputs(args, parser)
    seed = resolve_seed(args.seed)
    print(f"seed={seed}", file=sys.stderr)
    cfg = ValidationConfig(
        runs=args.runs, significance=args.significance, sigma_mult=args.sigma_mult
    )
    report = run_validation(
        args.model, cfg, seed, w=w, n=n, p=p, corrupt=corrupt
    )
    for c in report.checks:
        print(f"{c.name}: {c.verdict} (statistic {c.statistic:.6g}, "
              f"threshold {c.threshold:.6g})")
    if args.json:
        try:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(report.to_json() + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.json}: {exc}", file=sys.stderr)
            return 1
    return 0 if report.passed else 1


def _cmd_bench(args, parser) -> int:
    if args.threads != 1:
        _usage_error(parser, "timing runs are strictly single-threaded; "
                             "refusing to parallelize")
    seed = resolve_seed(args.seed)
    print(f"seed={seed}", file=sys.stderr)
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok]
    except ValueError:
        _usage_error(parser, f"bad --sizes {args.sizes!r}")
    models = [tok for tok in args.models.split(",") if tok]
    results = run_sweep(
        sizes,
        args.mean_degree,
        args.weights_law,
        models,
        args.reps,
        seed,
        presize=not args.no_presize,
        untruncated_tail=args.untruncated_tail,
        threads=args.threads,
    )
    try:
        text = emit_report(results, args.csv, args.plot)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not args.csv:
        print(text, end="")
    for field in ("t_total", "t_preprocess"):
        for model, ratios in doubling_ratios(results, field).items():
            pretty = ", ".join(f"{r:.3f}" for r in ratios)
            print(f"{field} doubling ratios [{model}]: {pretty}")
    if len(sizes) >= 2 and set(models) >= {"nr-event", "cl-skip"}:
        paired = paired_prep_margins(
            sizes, args.mean_degree, args.weights_law, seed,
            rounds=args.prep_rounds,
        )
        pretty = ", ".join(f"{m:+.3f}" for m in paired["margins"])
        print(f"paired preprocessing margins (cl-skip minus nr-event): {pretty}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand == "generate":
            return _cmd_generate(args, parser)
        if args.subcommand == "validate":
            return _cmd_validate(args, parser)
        return _cmd_bench(args, parser)
    except GraphGenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
