"""``diffusion-scope`` command line."""
from __future__ import annotations

import argparse
import logging
import sys

from . import pipeline


def _years(text):
    try:
        lo, _, hi = text.partition(":")
        lo = int(lo)
        hi = int(hi) if hi else lo
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected FIRST:LAST, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty year range {text!r}")
    return lo, hi


def _formats(text):
    fmts = tuple(f.strip().lower() for f in text.split(",") if f.strip())
    bad = [f for f in fmts if f not in ("geojson", "kml")]
    if bad or not fmts:
        raise argparse.ArgumentTypeError(f"unknown geo format(s): {text!r}")
    return fmts


def _u64(text):
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser():
    parser = argparse.ArgumentParser(prog="diffusion-scope", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="compute yearly indicators and overlays")
    r.add_argument("--input", action="append", required=True,
                   help="tagged-field export file or glob (repeatable)")
    r.add_argument("--gazetteer", required=True)
    r.add_argument("--basemap", required=True)
    r.add_argument("--years", type=_years, default=None, help="FIRST:LAST")
    r.add_argument("--min-city-papers", type=int, default=2)
    r.add_argument("--k-min", type=int, default=2)
    r.add_argument("--er-runs", type=int, default=100)
    r.add_argument("--seed", type=_u64, default=None)
    r.add_argument("--out", required=True)
    r.add_argument("--geo-format", type=_formats, default=("geojson",))
    r.add_argument("--pajek", action="store_true", help="also write Pajek .net/.vec files")

    v = sub.add_parser("validate-basemap", help="check a basemap bundle")
    v.add_argument("directory")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    if args.command == "validate-basemap":
        try:
            issues = pipeline.check_basemap(args.directory)
        except pipeline.InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return pipeline.EXIT_INPUT
        if not issues:
            print("ok")
            return pipeline.EXIT_OK
        for issue in issues:
            print(issue)
        return pipeline.EXIT_BASEMAP

    if args.er_runs > 0 and args.seed is None:
        parser.error("--seed is required when --er-runs > 0")
    config = pipeline.RunConfig(
        inputs=args.input,
        gazetteer=args.gazetteer,
        basemap=args.basemap,
        out=args.out,
        years=args.years,
        min_city_papers=args.min_city_papers,
        k_min=args.k_min,
        er_runs=args.er_runs,
        seed=args.seed,
        geo_formats=args.geo_format,
        pajek=args.pajek,
    )
    return pipeline.run(config)


if __name__ == "__main__":
    sys.exit(main())
