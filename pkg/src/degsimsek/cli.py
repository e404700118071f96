"""Command-line interface.

Subcommands:
  compute  one number-family value, symbolic or at a rational point
  series   the column generating function F_k (or the y1/y1deg analogue)
  phi      the row generating function phi_n at a rational point
  table    rectangular family tables as CSV or JSON
  verify   run the identity suite; exit 0 on success, 1 on failure

All rationals are read and written as "p/q" text; exit status 2 signals a
usage error.
"""

from __future__ import annotations

import argparse
from fractions import Fraction
import math
import sys

from .algebra import parse_rational, poly_eval
from .phi import phi_series
from .registry import (REGISTRY, registry_ids, run_suite, suite_failed)
from .reports import reports_to_csv, reports_to_json
from .simsek import (ROUTES, deg_simsek_y1, fk_series, simsek_y1, y1star)
from .tables import (FAMILIES, TableUsageError, build_table, render_csv,
                     render_json)

USAGE_ERROR = 2


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("index must be non-negative")
    return value


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degsimsek",
        description="Exact computation and verification of new-type "
                    "degenerate Simsek numbers and their relatives.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_point_flags(p, lam=True, alpha=True):
        if lam:
            p.add_argument("--lambda", dest="lam", type=_rational, default=None,
                           metavar="p/q")
        if alpha:
            p.add_argument("--alpha", type=_rational, default=None,
                           metavar="p/q")

    p = sub.add_parser("compute", help="one family value")
    p.add_argument("--family", choices=("y1", "y1deg", "y1star"), required=True)
    p.add_argument("--route", choices=ROUTES, default="A")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_nonneg, required=True)
    add_point_flags(p)

    p = sub.add_parser("series", help="column generating function in t")
    p.add_argument("--family", choices=("y1", "y1deg", "y1star"),
                   default="y1star")
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--order", type=_nonneg, default=8)
    add_point_flags(p)

    p = sub.add_parser("phi", help="row generating function in x")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--lambda", dest="lam", type=_rational, required=True,
                   metavar="p/q")
    p.add_argument("--alpha", type=_rational, required=True, metavar="p/q")
    p.add_argument("--degree", "--order", dest="degree", type=_nonneg,
                   default=8)

    p = sub.add_parser("table", help="rectangular family table")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--route", choices=ROUTES, default=None)
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.add_argument("--k-max", type=_nonneg, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    add_point_flags(p)

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("--list", action="store_true",
                   help="print the registry and exit")
    p.add_argument("--identity", default=None, metavar="ID[,ID...]")
    p.add_argument("--order", type=_nonneg, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-points", type=_nonneg, default=2)
    p.add_argument("--workers", type=_nonneg, default=1)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None)

    return parser


def _poly_text(poly, lam, alpha) -> str:
    """Canonical text of a ParamPoly value after optional substitution."""
    if lam is not None and alpha is not None:
        return str(poly_eval(poly, lam, alpha))
    if lam is not None or alpha is not None:
        return poly.substitute(lam=lam, alpha=alpha).render()
    return poly.render()


def _family_poly(family: str, route: str, n: int, k: int):
    if family == "y1":
        return simsek_y1(n, k)
    if family == "y1deg":
        return deg_simsek_y1(n, k)
    return y1star(n, k, route)


def _cmd_compute(args) -> int:
    if args.family == "y1" and args.alpha is not None:
        print("compute: family y1 takes no --alpha", file=sys.stderr)
        return USAGE_ERROR
    poly = _family_poly(args.family, args.route, args.n, args.k)
    alpha = Fraction(0) if args.family == "y1" and args.lam is not None \
        else args.alpha
    print(_poly_text(poly, args.lam, alpha))
    return 0


def _cmd_series(args) -> int:
    if args.family == "y1" and args.alpha is not None:
        print("series: family y1 takes no --alpha", file=sys.stderr)
        return USAGE_ERROR
    if args.family == "y1star" and (args.lam is None) != (args.alpha is None):
        print("series: give both --lambda and --alpha or neither",
              file=sys.stderr)
        return USAGE_ERROR
    if args.family == "y1star":
        series = fk_series(args.k, args.order, args.lam, args.alpha)
        print(series.render())
        return 0
    alpha = Fraction(0) if args.family == "y1" and args.lam is not None \
        else args.alpha
    coeffs = []
    for n in range(args.order + 1):
        poly = _family_poly(args.family, "A", n, args.k) \
            * Fraction(1, math.factorial(n))
        coeffs.append(_poly_text(poly, args.lam, alpha))
    print("[" + ", ".join(coeffs) + "]")
    return 0


def _cmd_phi(args) -> int:
    series = phi_series(args.n, args.lam, args.alpha, args.degree)
    print(series.render())
    return 0


def _cmd_table(args) -> int:
    try:
        table = build_table(args.family, args.route, args.n_max, args.k_max,
                            args.lam, args.alpha)
    except TableUsageError as exc:
        print(f"table: {exc}", file=sys.stderr)
        return USAGE_ERROR
    text = render_csv(table) if args.format == "csv" else render_json(table)
    _emit(text, args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.list:
        for entry in REGISTRY:
            variant = f" [variant of {entry.variant_of}]" if entry.variant_of else ""
            print(f"{entry.id:18} {entry.mode:9} {entry.description}{variant}")
        return 0
    ids = None
    if args.identity:
        ids = [i.strip() for i in args.identity.split(",") if i.strip()]
        unknown = [i for i in ids if i not in registry_ids()]
        if unknown:
            print(f"verify: unknown identity id(s): {', '.join(unknown)}",
                  file=sys.stderr)
            return USAGE_ERROR
    reports = run_suite(ids, order=args.order, seed=args.seed,
                        extra_points=args.random_points,
                        workers=max(args.workers, 1))
    if args.format == "json":
        _emit(reports_to_json(reports), args.out)
    elif args.format == "csv":
        _emit(reports_to_csv(reports), args.out)
    else:
        lines = []
        for r in reports:
            line = f"{r.id:18} {r.point_text:24} {r.status}"
            if r.mismatch:
                line += f"  [{r.mismatch}]"
            lines.append(line)
        failed = sum(1 for r in reports if r.status == "fail")
        lines.append(f"{len(reports)} reports, {failed} failures")
        _emit("\n".join(lines) + "\n", args.out)
    return 1 if suite_failed(reports) else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "compute": _cmd_compute,
        "series": _cmd_series,
        "phi": _cmd_phi,
        "table": _cmd_table,
        "verify": _cmd_verify,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
