"""Rectangular (n,k)-tables of number-family values, with deterministic
CSV and JSON serializations.

Entries are stored as canonical text (rationals as "p/q", polynomials as
"c*l^i*a^j" sums), never as decimals, so emitted bytes are reproducible
and parse/re-render round-trips are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import json

from .algebra import ParamPoly, render_scalar
from .classical import bernoulli_number, stirling1, stirling2
from .degenerate import deg_stirling1, deg_stirling2, new_deg_stirling2
from .simsek import deg_simsek_y1, simsek_y1, y1star

KIT_VERSION = "0.1.0"

FAMILIES = ("stirling1", "stirling2", "deg-stirling1", "deg-stirling2",
            "s2star", "bernoulli", "y1", "y1deg", "y1star")

# which substitutions each family accepts: subset of {"lambda", "alpha"}
_FAMILY_PARAMS = {
    "stirling1": frozenset(),
    "stirling2": frozenset(),
    "bernoulli": frozenset(),
    "deg-stirling1": frozenset({"alpha"}),
    "deg-stirling2": frozenset({"alpha"}),
    "s2star": frozenset({"alpha"}),
    "y1": frozenset({"lambda"}),
    "y1deg": frozenset({"lambda", "alpha"}),
    "y1star": frozenset({"lambda", "alpha"}),
}


class TableUsageError(ValueError):
    """Invalid family/route/substitution combination."""


@dataclass
class NumberTable:
    family: str
    route: str  # "" when the family has no routes
    n_max: int
    k_max: int
    lam: Fraction | None
    alpha: Fraction | None
    entries: list[list[str]]  # rows indexed by n, columns by k
    version: str = KIT_VERSION


def _specialize(poly: ParamPoly, lam, alpha) -> str:
    if lam is not None or alpha is not None:
        poly = poly.substitute(lam=lam, alpha=alpha)
    if lam is not None and alpha is not None:
        return str(poly.constant_value())
    return poly.render()


def build_table(family: str, route: str | None, n_max: int, k_max: int,
                lam=None, alpha=None) -> NumberTable:
    if family not in FAMILIES:
        raise TableUsageError(f"unknown family {family!r}")
    if route and family != "y1star":
        raise TableUsageError(f"family {family!r} has no routes")
    allowed = _FAMILY_PARAMS[family]
    if lam is not None and "lambda" not in allowed:
        raise TableUsageError(f"family {family!r} takes no lambda substitution")
    if alpha is not None and "alpha" not in allowed:
        raise TableUsageError(f"family {family!r} takes no alpha substitution")
    if n_max < 0 or k_max < 0:
        raise TableUsageError("table bounds must be non-negative")
    lam = None if lam is None else Fraction(lam)
    alpha = None if alpha is None else Fraction(alpha)
    if family == "y1star":
        route = route or "A"

    def cell(n: int, k: int) -> str:
        if family == "stirling1":
            return str(stirling1(n, k))
        if family == "stirling2":
            return str(stirling2(n, k))
        if family == "bernoulli":
            return str(bernoulli_number(n, k))
        if family == "deg-stirling1":
            return _specialize(deg_stirling1(n, k), None, alpha)
        if family == "deg-stirling2":
            return _specialize(deg_stirling2(n, k), None, alpha)
        if family == "s2star":
            value = new_deg_stirling2(n, k,
                                      ParamPoly.alpha() if alpha is None else alpha)
            return render_scalar(value)
        if family == "y1":
            poly = simsek_y1(n, k)
            return str(poly.evaluate(lam, 0)) if lam is not None else poly.render()
        if family == "y1deg":
            return _specialize(deg_simsek_y1(n, k), lam, alpha)
        poly = y1star(n, k, route)
        return _specialize(poly, lam, alpha)

    entries = [[cell(n, k) for k in range(k_max + 1)] for n in range(n_max + 1)]
    return NumberTable(family, route or "", n_max, k_max, lam, alpha, entries)


def _param_text(value: Fraction | None) -> str:
    return "symbolic" if value is None else str(value)


def _param_parse(text: str) -> Fraction | None:
    return None if text == "symbolic" else Fraction(text)


def render_csv(table: NumberTable) -> str:
    lines = [
        f"family,{table.family}",
        f"route,{table.route}",
        f"n_max,{table.n_max}",
        f"k_max,{table.k_max}",
        f"lambda,{_param_text(table.lam)}",
        f"alpha,{_param_text(table.alpha)}",
        f"version,{table.version}",
        "n\\k," + ",".join(str(k) for k in range(table.k_max + 1)),
    ]
    for n, row in enumerate(table.entries):
        lines.append(f"{n}," + ",".join(row))
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> NumberTable:
    lines = text.splitlines()
    meta = {}
    for line in lines[:7]:
        key, _, value = line.partition(",")
        meta[key] = value
    n_max = int(meta["n_max"])
    k_max = int(meta["k_max"])
    entries = []
    for n in range(n_max + 1):
        cells = lines[8 + n].split(",")
        if cells[0] != str(n) or len(cells) != k_max + 2:
            raise ValueError(f"malformed table row {lines[8 + n]!r}")
        entries.append(cells[1:])
    return NumberTable(meta["family"], meta["route"], n_max, k_max,
                       _param_parse(meta["lambda"]), _param_parse(meta["alpha"]),
                       entries, meta["version"])


def render_json(table: NumberTable) -> str:
    doc = {
        "family": table.family,
        "route": table.route,
        "n_range": [0, table.n_max],
        "k_range": [0, table.k_max],
        "lambda": _param_text(table.lam),
        "alpha": _param_text(table.alpha),
        "version": table.version,
        "entries": table.entries,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_json(text: str) -> NumberTable:
    doc = json.loads(text)
    return NumberTable(doc["family"], doc["route"], doc["n_range"][1],
                       doc["k_range"][1], _param_parse(doc["lambda"]),
                       _param_parse(doc["alpha"]), doc["entries"],
                       doc["version"])
