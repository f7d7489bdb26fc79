"""Command line: ``noisyspan {gen,run,verify,bench}``."""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import formats
from .bench import ALGO_MODELS, COLUMNS, RunRecord, UsageError, run_algorithm, sweep, write_csv
from .instances import InstanceSpec, LadderMode, RealizationMode, generate

EXIT_USAGE = 2


def _default_seed() -> int:
    return int(os.environ.get("NOISYSPAN_SEED", "0"))


def _add_noise_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=float, default=0.25, help="oracle error probability, 0 <= p < 1/2")
    p.add_argument("--seed", type=int, default=None, help="oracle seed (default $NOISYSPAN_SEED or 0)")


def _add_verify_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--assumed-p", type=float, default=None,
                   help="error rate used for threshold/budget (default: --p, or 0.25 if --p is 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noisyspan", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write an instance in the graph text format")
    gen.add_argument("--family", required=True, choices=["grid", "ladder", "complete", "star"])
    gen.add_argument("--rows", type=int, default=3)
    gen.add_argument("--cols", type=int, default=3)
    gen.add_argument("--n", type=int, default=4)
    gen.add_argument("--mode", default="two-sided-lb", choices=[m.value for m in LadderMode])
    gen.add_argument("--realize", default="random-tree",
                     choices=[m.value for m in (RealizationMode.RANDOM_SPANNING_TREE,
                                                RealizationMode.SNAKE_PATH, RealizationMode.FULL)])
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", default="-")

    run = sub.add_parser("run", help="run one algorithm on a graph file, print a CSV row")
    run.add_argument("graph")
    run.add_argument("--algo", required=True, choices=list(ALGO_MODELS))
    run.add_argument("--model", choices=["two-sided", "fn", "fp"], default=None)
    _add_noise_args(run)
    _add_verify_args(run)
    run.add_argument("--max-queries", type=int, default=None)
    run.add_argument("--header", action="store_true", help="print the column header first")
    run.add_argument("--timing", action="store_true", help="fill the ms column")

    ver = sub.add_parser("verify", help="check whether the tree in a graph file is fully realized")
    ver.add_argument("graph")
    _add_noise_args(ver)
    _add_verify_args(ver)
    ver.add_argument("--header", action="store_true")

    bench = sub.add_parser("bench", help="seeded sweep over sizes, trials and algorithms")
    bench.add_argument("--family", required=True, choices=["grid", "ladder", "complete", "star"])
    bench.add_argument("--sizes", type=int, nargs="+", required=True,
                       help="grid: vertex counts (perfect squares); ladder: pairs; complete/star: vertices")
    bench.add_argument("--trials", type=int, default=10)
    bench.add_argument("--algos", nargs="+", required=True, choices=list(ALGO_MODELS))
    bench.add_argument("--model", choices=["two-sided", "fn", "fp"], default=None)
    _add_noise_args(bench)
    bench.add_argument("--mode", default="two-sided-lb", choices=[m.value for m in LadderMode])
    bench.add_argument("--realize", default="random-tree",
                       choices=[RealizationMode.RANDOM_SPANNING_TREE.value, RealizationMode.SNAKE_PATH.value])
    bench.add_argument("--jobs", type=int, default=1)
    bench.add_argument("--timing", action="store_true",
                       help="fill the ms column (output is then no longer byte-reproducible)")
    bench.add_argument("--no-summary", action="store_true")
    bench.add_argument("--out", default="-")
    return parser


def _open_out(path):
    return sys.stdout if path == "-" else open(path, "w", newline="")


def cmd_gen(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    if args.family == "grid":
        spec = InstanceSpec("grid", rows=args.rows, cols=args.cols,
                            realization_mode=RealizationMode(args.realize), seed=seed)
    elif args.family == "ladder":
        spec = InstanceSpec("ladder", n=args.n, ladder_mode=LadderMode(args.mode), seed=seed)
    else:
        spec = InstanceSpec(args.family, n=args.n, seed=seed)
    inst = generate(spec)
    fh = _open_out(args.out)
    try:
        formats.write(fh, inst.graph, inst.embedding, inst.realization.realized)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _run_and_print(args, algo: str, model) -> int:
    gf = formats.load(args.graph)
    if gf.realized is None:
        raise UsageError("graph file has no REALIZED section")
    seed = _default_seed() if args.seed is None else args.seed
    start = time.perf_counter()
    res, ok, oracle = run_algorithm(algo, gf.graph, gf.realized, gf.embedding, args.p, seed, model=model,
                                    epsilon=args.epsilon, delta=args.delta, assumed_p=args.assumed_p,
                                    max_queries=getattr(args, "max_queries", None))
    ms = (time.perf_counter() - start) * 1000 if getattr(args, "timing", False) else None
    rec = RunRecord(os.path.basename(args.graph), gf.graph.n, gf.graph.m, algo, ALGO_MODELS[algo].value,
                    args.p, seed, oracle.query_count, ok, ms)
    if args.header:
        print(",".join(COLUMNS))
    print(",".join(rec.row()))
    return 0


def cmd_run(args) -> int:
    return _run_and_print(args, args.algo, args.model)


def cmd_verify(args) -> int:
    return _run_and_print(args, "verify", None)


def cmd_bench(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    records = sweep(args.family, args.sizes, args.trials, args.algos, args.p, seed, model=args.model,
                    ladder_mode=args.mode, realize=args.realize, timing=args.timing, jobs=args.jobs)
    fh = _open_out(args.out)
    try:
        write_csv(fh, records, summary=not args.no_summary)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


COMMANDS = {"gen": cmd_gen, "run": cmd_run, "verify": cmd_verify, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"noisyspan {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"noisyspan {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
