"""Standalone figure tool for simulator CSV outputs."""

from __future__ import annotations

import argparse
import sys

from .errors import EmptyDirectoryError, MalformedCsvError
from .snapshots import MODES, plot_snapshots
from .sweep_plot import plot_sweep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polariton-gate-plots",
        description="Render snapshot and sweep figures from simulator CSV files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_snap = sub.add_parser("snapshots", help="multi-panel (R, xi) maps")
    p_snap.add_argument("--dir", required=True, help="directory with snapshot_*.csv")
    p_snap.add_argument("--out", required=True, help="output image path (.png)")
    p_snap.add_argument("--mode", choices=MODES, default="abs")

    p_sweep = sub.add_parser("sweep", help="phase vs swept axis with pi line")
    p_sweep.add_argument("--csv", required=True, help="sweep CSV file")
    p_sweep.add_argument("--out", required=True, help="output image path (.png)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "snapshots":
            result = plot_snapshots(args.dir, args.out, mode=args.mode)
            print(f"wrote {result.png_path} and {result.svg_path}")
        else:
            result = plot_sweep(args.csv, args.out)
            print(f"wrote {result.png_path} and {result.svg_path}")
    except (MalformedCsvError, EmptyDirectoryError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
