"""Command line driver: one subcommand per figure kind.

Exit codes: 0 ok, 2 unreadable or schema-mismatched input.
"""

from __future__ import annotations

import argparse
import sys

from .figures import KINDS, PlotSpec, plot
from .io import SchemaError


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hydroplots", description=__doc__)
    sub = p.add_subparsers(dest="kind", required=True)

    helps = {
        "decay": "semilog-y energy curves with fitted exponentials",
        "dispersion": "Re/Im root curves vs k",
        "snapshot": "physical-space rendering of a stored state",
        "slope": "log-log error vs epsilon with fitted slope",
    }
    for kind in KINDS:
        sk = sub.add_parser(kind, help=helps[kind])
        if kind == "decay":
            sk.add_argument("inputs", nargs="+", help="diagnostics CSV file(s)")
        else:
            sk.add_argument("inputs", nargs=1, help="input file")
        sk.add_argument("-o", "--output", default=f"{kind}.png",
                        help="image path, .png or .svg (default %(default)s)")
        sk.add_argument("--title", default="")
        sk.add_argument("--dpi", type=int, default=150)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(args.kind, tuple(args.inputs), args.output,
                    title=args.title, dpi=args.dpi)
    try:
        info = plot(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.kind == "decay":
        rates = ", ".join(f"{model}: c = {c:.4g}" for model, c in info)
        print(f"wrote {spec.output} ({rates})")
    elif args.kind == "dispersion":
        print(f"wrote {spec.output} ({info} modes)")
    elif args.kind == "snapshot":
        dim, n = info
        print(f"wrote {spec.output} ({dim}d, n={n})")
    else:
        print(f"wrote {spec.output} (slope = {info:.3g})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
