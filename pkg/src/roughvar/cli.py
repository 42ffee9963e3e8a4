"""Command-line front door.

Thin in-process client over the core package: parses parameters, calls the
report builders, and prints CSV/JSON/table on stdout.  Diagnostics go to
stderr as machine-readable JSON; the exit status is 0 only on success.
No network is involved (the HTTP surface is a separate service module), and
the only environment variable honored is ROUGHVAR_THREADS.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import report
from .errors import (
    DomainError,
    RangeRefusedError,
    ResourceBudgetError,
    RoughVarError,
    TruncationError,
    UnsupportedRegimeError,
)
from .variance import default_workers

EXIT_CODES = {
    DomainError: 3,
    ResourceBudgetError: 4,
    UnsupportedRegimeError: 5,
    RangeRefusedError: 6,
    TruncationError: 7,
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json", "table"), default="table")
    p.add_argument("--threads", type=int, default=None, help="worker count (default: ROUGHVAR_THREADS or 1)")
    p.add_argument("--timing", action="store_true", help="append an elapsed_s column (output no longer byte-reproducible)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="roughvar",
        description="exact and asymptotic variance of rough numbers in short intervals",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("variance", help="exact window-count variance over (0, X]")
    p.add_argument("--X", type=int, required=True)
    p.add_argument("--H", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("mainterm", help="exact main term by either evaluator")
    p.add_argument("--H", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--method", choices=("auto", "direct", "correlation"), default="auto")
    _add_common(p)

    p = sub.add_parser("vq", help="totative window variance modulo squarefree q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--H", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("friable", help="exact friable counts and the saddle estimate")
    p.add_argument("--X", type=int, required=True, help="count bound x")
    p.add_argument("--y", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("saddle", help="saddle exponent, shift solution, and curvature")
    p.add_argument("--X", type=float, required=True, help="count bound x")
    p.add_argument("--y", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("contour", help="vertical-line integral of the weighted kernel")
    p.add_argument("--X", type=float, required=True, help="argument x")
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--c", type=float, default=0.75)
    p.add_argument("--tol", type=float, default=1e-3)
    _add_common(p)

    p = sub.add_parser("converge", help="ratio of exact variance to main term along X")
    p.add_argument("--H", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--X", type=int, nargs="+", required=True, metavar="X")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--force", action="store_true", help="compute even outside the admissible range")
    _add_common(p)

    p = sub.add_parser("regimes", help="main term vs regime predictions over a grid")
    p.add_argument(
        "--pairs",
        required=True,
        help="comma-separated H:y pairs, e.g. 16:1000000,10000:100",
    )
    _add_common(p)

    return ap


def _run(args: argparse.Namespace) -> str:
    workers = args.threads if getattr(args, "threads", None) else default_workers()
    timing = args.timing
    if args.cmd == "variance":
        rows = [report.variance_row(args.X, args.H, args.y, workers=workers, include_timing=timing)]
    elif args.cmd == "mainterm":
        rows = [report.mainterm_row(args.H, args.y, method=args.method, include_timing=timing)]
    elif args.cmd == "vq":
        rows = [report.vq_row(args.q, args.H, include_timing=timing)]
    elif args.cmd == "friable":
        rows = [report.friable_row(args.X, args.y, include_timing=timing)]
    elif args.cmd == "saddle":
        rows = [report.saddle_row(args.X, args.y, include_timing=timing)]
    elif args.cmd == "contour":
        rows = [report.contour_row(args.X, args.y, args.c, tol=args.tol, include_timing=timing)]
    elif args.cmd == "converge":
        rows = report.converge_rows(
            args.H, args.y, args.X, epsilon=args.eps, delta=args.delta,
            force=args.force, workers=workers, include_timing=timing,
        )
    elif args.cmd == "regimes":
        pairs = []
        for chunk in args.pairs.split(","):
            h_str, y_str = chunk.split(":")
            pairs.append((int(h_str), int(y_str)))
        rows = report.regimes_rows(pairs, include_timing=timing)
    else:  # pragma: no cover - argparse enforces the choices
        raise DomainError(f"unknown command {args.cmd}")
    return report.render(rows, args.format)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sys.stdout.write(_run(args))
    except RoughVarError as exc:
        payload = {"error": {"code": exc.code, "message": str(exc)}}
        print(json.dumps(payload), file=sys.stderr)
        for cls, code in EXIT_CODES.items():
            if isinstance(exc, cls):
                return code
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
