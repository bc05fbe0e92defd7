"""
Command-line front end.

Subcommands::

    sectoria verify  --results all --n 4 --trials 100 --alpha 0.2,0.6 --v 0.5 --seed 7
    sectoria mean    --kind geom --v 0.5 --a A.json --b B.json --out G.json
    sectoria angle   --a A.json
    sectoria range   --a A.json --points 180 --out W.csv

Exit codes: 0 success, 1 failed certificate or non-accretive input,
2 invalid flags or unreadable input.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import sweep
from .errors import NotAccretiveError, SectoriaError
from .maps import MAP_KINDS
from .matrix_io import MatrixFileError, matrix_to_record, read_matrix, write_matrix
from .means import (
    DEFAULT_RTOL,
    QuadratureWarning,
    arithmetic_mean,
    geometric_mean_accretive,
    harmonic_mean,
)
from .sector import boundary_thetas, numerical_range_boundary, sector_angle

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _csv(kind):
    def parse(text):
        try:
            return [kind(x) for x in text.split(",") if x.strip()]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    return parse


def _u64(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sectoria", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run randomized certificate sweeps")
    p.add_argument("--n", type=_csv(int), default=[4],
                   help="dimension, or a comma list cycled over trials")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--alpha", type=_csv(float), default=[0.2, 0.6, 1.0])
    p.add_argument("--v", type=_csv(float), default=[0.5])
    p.add_argument("--maps", type=_csv(str), default=list(sweep.DEFAULT_MAPS),
                   help=f"comma list from {', '.join(MAP_KINDS)}")
    p.add_argument("--results", type=_csv(str), default=["all"],
                   help=f"'all' or a comma list from {', '.join(sweep.RESULT_GROUPS)}")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out", type=Path, default=None, help="report path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default=None,
                   help="report format (default: from --out suffix, else json)")
    p.add_argument("--tol", type=float, default=sweep.LOEWNER_RTOL)
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker threads (default: ${sweep.THREADS_ENV}, 0 = auto)")
    p.add_argument("--plot", action="store_true",
                   help="also write a margin figure next to the report")

    p = sub.add_parser("mean", help="compute a weighted matrix mean")
    p.add_argument("--kind", choices=("arith", "harm", "geom"), required=True)
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--a", type=Path, required=True)
    p.add_argument("--b", type=Path, required=True)
    p.add_argument("--rtol", type=float, default=DEFAULT_RTOL)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("angle", help="print the minimal sector angle")
    p.add_argument("--a", type=Path, required=True)

    p = sub.add_parser("range", help="sample the numerical range boundary as CSV")
    p.add_argument("--a", type=Path, required=True)
    p.add_argument("--points", type=int, default=180)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--plot", action="store_true",
                   help="also write a figure next to the CSV")
    return parser


def _err(msg):
    print(f"sectoria: {msg}", file=sys.stderr)


def cmd_verify(args) -> int:
    results = list(sweep.RESULT_GROUPS) if args.results == ["all"] else args.results
    try:
        cfg = sweep.SweepConfig(n=args.n, trials=args.trials, alphas=args.alpha, vs=args.v,
                                maps=args.maps, results=results, seed=args.seed, tol=args.tol)
    except ValueError as exc:
        _err(exc)
        return EXIT_USAGE
    fmt = args.format or ("csv" if args.out and args.out.suffix == ".csv" else "json")
    rows, report = sweep.verify(cfg, args.workers)
    text = sweep.report_csv(rows) if fmt == "csv" else sweep.report_json(report)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from .plotting import plot_margins

        target = args.out.with_suffix(".margins.png") if args.out else Path("margins.png")
        plot_margins(rows, target)
    failed = report["total"]["count"] - report["total"]["passed"]
    if failed:
        _err(f"{failed} certificate(s) failed")
        return EXIT_FAIL
    return EXIT_OK


def cmd_mean(args) -> int:
    try:
        A, B = read_matrix(args.a), read_matrix(args.b)
    except (MatrixFileError, ValueError) as exc:
        _err(exc)
        return EXIT_USAGE
    if A.shape != B.shape:
        _err(f"dimension mismatch {A.shape} vs {B.shape}")
        return EXIT_USAGE
    if not 0 <= args.v <= 1:
        _err("--v must lie in [0, 1]")
        return EXIT_USAGE
    diagnostics = {"kind": args.kind, "v": args.v}
    try:
        if args.kind == "arith":
            value = arithmetic_mean(A, B, args.v)
        elif args.kind == "harm":
            value = harmonic_mean(A, B, args.v)
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", QuadratureWarning)
                res = geometric_mean_accretive(A, B, args.v, args.rtol)
            value = res.value
            diagnostics.update(method=res.method, nodes_used=res.nodes_used,
                               convergence_estimate=res.convergence_estimate,
                               converged=res.converged)
            if not res.converged:
                _err(f"quadrature did not reach rtol={args.rtol} "
                     f"(estimate {res.convergence_estimate:.3e})")
    except NotAccretiveError as exc:
        _err(exc)
        return EXIT_FAIL
    if args.out:
        write_matrix(args.out, value, **diagnostics)
    else:
        sys.stdout.write(json.dumps({**matrix_to_record(value), **diagnostics}, indent=2) + "\n")
    return EXIT_OK


def cmd_angle(args) -> int:
    try:
        A = read_matrix(args.a)
    except (MatrixFileError, ValueError) as exc:
        _err(exc)
        return EXIT_USAGE
    try:
        print(f"{sector_angle(A):.12g}")
    except NotAccretiveError:
        print("not accretive")
        return EXIT_FAIL
    return EXIT_OK


def cmd_range(args) -> int:
    if args.points < 3:
        _err("--points must be at least 3")
        return EXIT_USAGE
    try:
        A = read_matrix(args.a)
    except (MatrixFileError, ValueError) as exc:
        _err(exc)
        return EXIT_USAGE
    pts = numerical_range_boundary(A, args.points)
    lines = ["theta,re,im"]
    lines += [f"{t!r},{z.real!r},{z.imag!r}"
              for t, z in zip(boundary_thetas(args.points).tolist(), pts.tolist())]
    text = "\n".join(lines) + "\n"
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from .plotting import plot_numerical_range

        try:
            alpha = sector_angle(A)
        except NotAccretiveError:
            alpha = None
        target = args.out.with_suffix(".png") if args.out else Path("numerical_range.png")
        plot_numerical_range(pts, target, alpha, np.linalg.eigvals(A))
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "mean": cmd_mean, "angle": cmd_angle, "range": cmd_range}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except SectoriaError as exc:
        _err(exc)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
