"""Command line entry: one subcommand per figure kind.

    resgld-figs density-overlay --runs DIR [DIR ...] --out fig.png
    resgld-figs trace           --runs DIR [DIR ...] --out fig.png
    resgld-figs sweep-heatmap   --table sweep.csv    --out fig.png
"""

from __future__ import annotations

import argparse
import sys

from .io import ArtifactFormatError
from .plots import FigureSpec, plot


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="resgld-figs", description=__doc__)
    sub = parser.add_subparsers(dest="kind", required=True)

    for kind in ("density-overlay", "trace"):
        p = sub.add_parser(kind)
        p.add_argument("--runs", nargs="+", required=True, metavar="DIR")
        p.add_argument("--out", required=True)
        p.add_argument("--bins", type=int, default=120)

    p = sub.add_parser("sweep-heatmap")
    p.add_argument("--table", required=True)
    p.add_argument("--out", required=True)

    args = parser.parse_args(argv)
    if args.kind == "sweep-heatmap":
        spec = FigureSpec(kind="sweep_heatmap", output=args.out, sweep_table=args.table)
    else:
        spec = FigureSpec(
            kind=args.kind.replace("-", "_"),
            output=args.out,
            run_dirs=tuple(args.runs),
            bins=args.bins,
        )
    try:
        path = plot(spec)
    except ArtifactFormatError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
