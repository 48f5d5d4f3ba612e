"""Command line entry point: ``unilog bench`` and ``unilog log``."""

import argparse
import sys

from unilog import ensembles, harness
from unilog.logs import GENERAL_ALGORITHMS, Algorithm
from unilog.matrix_io import read_matrix, write_matrix
from unilog.selfdual import SELFDUAL_ALGORITHMS

LOG_ALGORITHMS = {str(a): f for a, f in {**GENERAL_ALGORITHMS, **SELFDUAL_ALGORITHMS}.items()}
LOG_CHOICES = ["1", "3", "4", "5", "6"]


def _sizes(text):
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}")
    if not sizes:
        raise argparse.ArgumentTypeError("empty size list")
    return sizes


def build_parser():
    parser = argparse.ArgumentParser(
        prog="unilog", description="Hermitian logarithms of near-unitary matrices."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="run a backward-error/timing table")
    bench.add_argument("--table", required=True, choices=sorted(harness.TABLES))
    bench.add_argument("--sizes", type=_sizes, default=list(harness.DEFAULT_SIZES))
    bench.add_argument("--trials", type=int, default=30)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out", required=True, help="CSV destination ('-' for stdout)")
    bench.add_argument(
        "--no-timing",
        action="store_true",
        help="write nan wall times so reruns are byte-identical",
    )
    bench.add_argument("--quiet", action="store_true")

    log = sub.add_parser("log", help="compute the Hermitian logarithm of a matrix file")
    log.add_argument("--algorithm", required=True, choices=LOG_CHOICES)
    log.add_argument("--in", dest="infile", required=True)
    log.add_argument("--out", dest="outfile", required=True)
    return parser


def _bench(args):
    noise_base, structured = harness.TABLES[args.table]

    def progress(avg):
        if args.quiet:
            return
        errs = "  ".join(f"alg {a}: {e:.3e}" for a, e in avg.backward_error.items())
        print(f"n={avg.n:<4d} deviation {avg.deviation:.3e}  {errs}", file=sys.stderr)

    records = harness.run_table(
        args.table, sizes=args.sizes, trials=args.trials, seed=args.seed, progress=progress
    )
    comments = [
        f"table={args.table} noise_base={noise_base:g} noise_exponent=-0.56 "
        f"structured={structured} trials={args.trials} seed={args.seed}",
        f"rng={ensembles.RNG_NAME}",
        f"cluster_offset={ensembles.CLUSTER_OFFSET:g} noise_variance={ensembles.NOISE_VARIANCE:g}",
    ]
    if args.out == "-":
        harness.emit_csv(records, sys.stdout, comments, timing=not args.no_timing)
    else:
        harness.emit_csv(records, args.out, comments, timing=not args.no_timing)
    return 0


def _log(args):
    u = read_matrix(args.infile)
    result = LOG_ALGORITHMS[args.algorithm](u)
    write_matrix(args.outfile, result.h)
    print(
        f"algorithm {Algorithm(args.algorithm).value}: deviation {result.deviation:.6e}  "
        f"backward error {result.backward_error:.6e}  time {result.wall_time:.4f}s"
    )
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            return _bench(args)
        return _log(args)
    except (OSError, ValueError, ArithmeticError) as exc:
        print(f"unilog: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
