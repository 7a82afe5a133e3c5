"""Command-line interface: `modlink-harness <subcommand>`."""

from __future__ import annotations

import argparse
import sys

from .crosscheck import DEFAULT_TOL, OracleUnavailable, crosscheck
from .plot import plot


def cmd_crosscheck(args) -> int:
    try:
        comparisons = crosscheck(args.csv_in, args.report_out, tol=args.tol)
    except OracleUnavailable as exc:
        with open(args.report_out, "w") as fh:
            fh.write(f"# oracle unavailable: {exc}\n")
        print(f"oracle unavailable: {exc}", file=sys.stderr)
        return 2
    both = [c for c in comparisons if c.agree is not None]
    agreed = sum(1 for c in both if c.agree)
    print(f"wrote {args.report_out}: {agreed}/{len(both)} agree "
          f"(of {len(comparisons)} rows)")
    return 0


def cmd_plot(args) -> int:
    slope, intercept, r2 = plot(args.csv_in, args.png_out)
    print(f"wrote {args.png_out}: fit {slope:.3f}*x + {intercept:.3f}, "
          f"R^2 = {r2:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modlink-harness")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("crosscheck", help="compare volumes against SnapPy")
    p.add_argument("csv_in")
    p.add_argument("report_out")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("plot", help="Figure-2 analog scatter + fit line")
    p.add_argument("csv_in")
    p.add_argument("png_out")
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
