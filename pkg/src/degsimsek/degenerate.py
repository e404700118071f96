"""Degenerate special-number families: the degenerate exponential series,
degenerate Stirling numbers of both kinds, the new-type degenerate Stirling
numbers S2*(n,k|a), and degenerate Apostol-Euler numbers.

The degenerate Stirling triangles are the two change-of-basis matrices
between the ordinary and the a-deformed falling-factorial bases:

    (x)_{n,a} = sum_l  deg_stirling2(n,l) (x)_l
    (x)_n     = sum_l  deg_stirling1(n,l) (x)_{l,a}

They are computed by a triangular solve against the (monic) target basis,
straight from the definitions.
"""

from __future__ import annotations

from fractions import Fraction
import math
import threading

from .algebra import (PP, QQ, ParamPoly, SeriesDomainError, TruncSeries,
                      exp_t, ring_of, series_reciprocal)
from .classical import degenerate_falling, falling_factorial

_lock = threading.Lock()

_L = ParamPoly.lam()
_A = ParamPoly.alpha()

# row caches: n -> list of ParamPoly (index l), polynomials in a only
_DS2_ROWS: dict[int, list[ParamPoly]] = {}
_DS1_ROWS: dict[int, list[ParamPoly]] = {}


def _falling_basis_row(n: int, source, target_basis) -> list[ParamPoly]:
    """Expand source(n) in the monic basis target_basis(0..n) by descending
    triangular elimination on the l-degree."""
    p = source(n)
    row = [ParamPoly() for _ in range(n + 1)]
    for d in range(n, -1, -1):
        c = p.coeff_l(d)
        row[d] = c
        if not c.is_zero:
            p = p - c * target_basis(d)
    assert p.is_zero, "basis conversion left a nonzero remainder"
    return row


def deg_stirling2(n: int, l: int) -> ParamPoly:
    """Coefficient of (x)_l in (x)_{n,a}, as a polynomial in a."""
    if n < 0 or l < 0 or l > n:
        return ParamPoly()
    with _lock:
        row = _DS2_ROWS.get(n)
        if row is None:
            row = _falling_basis_row(
                n,
                lambda m: degenerate_falling(_L, m, _A),
                lambda d: falling_factorial(_L, d))
            _DS2_ROWS[n] = row
    return row[l]


def deg_stirling1(n: int, l: int) -> ParamPoly:
    """Coefficient of (x)_{l,a} in (x)_n, as a polynomial in a."""
    if n < 0 or l < 0 or l > n:
        return ParamPoly()
    with _lock:
        row = _DS1_ROWS.get(n)
        if row is None:
            row = _falling_basis_row(
                n,
                lambda m: falling_factorial(_L, m),
                lambda d: degenerate_falling(_L, d, _A))
            _DS1_ROWS[n] = row
    return row[l]


def new_deg_stirling2(n: int, k: int, alpha):
    """New-type degenerate Stirling number S2*(n,k|a): n! times coefficient
    n of (e^t-1)_{k,a}/k!.

    `alpha` may be a rational (value returned as Fraction) or a ParamPoly
    (value returned symbolically).  Series extraction is authoritative at
    k = 0: S2*(0,0|a) = 1 and S2*(n,0|a) = 0 for n >= 1.
    """
    if n < 0 or k < 0:
        return ParamPoly() if isinstance(alpha, ParamPoly) else Fraction(0)
    ring = PP if isinstance(alpha, ParamPoly) else QQ
    em1 = exp_t(n, ring) - 1
    series = degenerate_falling(em1, k, alpha)
    return series.coeffs[n] * Fraction(math.factorial(n), math.factorial(k))


def deg_exp_series(x, alpha, order: int, var: str = "t",
                   ring=None) -> TruncSeries:
    """Degenerate exponential e_a^x as a truncated series: coefficient m is
    (x)_{m,alpha}/m!.  Works for x and alpha in any kit ring; at alpha = 0
    it reduces to exp(x*var)."""
    if ring is None:
        ring = ring_of(x)
    prod = ring.coerce(x) * 0 + 1
    coeffs = [prod]
    for m in range(1, order + 1):
        prod = prod * (x - alpha * (m - 1))
        coeffs.append(prod * Fraction(1, math.factorial(m)))
    return TruncSeries(var, order, coeffs, ring)


def apostol_euler_series(k: int, lam0, alpha0, order: int) -> TruncSeries:
    """The series (2/(lam * e_a(t) + 1))^k whose coefficients carry the
    degenerate Apostol-Euler numbers of order k; needs lam != -1."""
    lam0 = Fraction(lam0)
    alpha0 = Fraction(alpha0)
    if lam0 == -1:
        raise SeriesDomainError("Apostol-Euler numbers need lam != -1")
    inner = deg_exp_series(Fraction(1), alpha0, order)  # e_a(t); exp(t) at a=0
    half = (inner * lam0 + 1) * Fraction(1, 2)
    return series_reciprocal(half) ** k


def apostol_euler(n: int, k: int, lam0, alpha0) -> Fraction:
    """Degenerate first-kind Apostol-Euler number E_n^(k)(lam|a)."""
    if n < 0 or k < 0:
        raise ValueError("apostol_euler needs n, k >= 0")
    series = apostol_euler_series(k, lam0, alpha0, n)
    return series.coeffs[n] * math.factorial(n)


def warm_caches(n_max: int) -> None:
    """Fill both degenerate Stirling triangles up to row n_max."""
    for n in range(n_max + 1):
        deg_stirling2(n, 0)
        deg_stirling1(n, 0)
