"""Simsek number families.

Three families live here, all polynomial in the parameters l (lambda) and
a (alpha):

  * y1(n,k)      -- coefficients of (l*e^t + 1)^k / k!
  * y1deg(n,k)   -- the older degenerate family, coefficients of
                    (l*(1+a*t)^(1/a) + 1)^k / k!
  * y1star(n,k)  -- the new-type degenerate family, coefficients of
                    F_k(t) = (l*e^t + 1)_{k,a} / k!

y1star is computable by six independent routes (A-F below) which must agree
exactly; route A (series extraction from F_k) is the defining one, the rest
are verification surfaces:

  A  n! [t^n] (l*e^t+1)_{k,a}/k!
  B  (1/k!) sum_{l<=k} sum_{j<=l} C(l,j) a^(k-l) s(k,l) l^j j^n
  C  (1/k!) sum_{l<=k} sum_{j<=l} C(k,l) a^(l-j) l^j j^n (1)_{k-l,a} s(l,j)
  D  (1/k!) sum_{j<=k} a^(k-j) C(k,j) (j/k) B_{k-j}^(k) sum_{i<=j} C(j,i) l^i i^n
  E  recurrence in k:  (k+1) y*(n,k+1) = l sum_i C(n,i) y*(i,k) + (1-k*a) y*(n,k)
  F  recurrence in n:  y*(n+1,k) = (l/k) sum_j C(n,j) (y*(j,k-1)+y*(j+1,k-1))
                                   + ((1+a-k*a)/k) y*(n+1,k-1)
     seeded with column y*(n,0) = [n=0] and row y*(0,k) = (l+1)_{k,a}/k!

(s is the signed Stirling-1 triangle, B the higher-order Bernoulli numbers,
and the convention 0^0 = 1 applies in every j^n sum.)
"""

from __future__ import annotations

from fractions import Fraction
import math
import threading

from .algebra import PP, QQ, ParamPoly, TruncSeries, exp_t
from .classical import (bernoulli_number, bernoulli_poly, degenerate_falling,
                        stirling1)

_lock = threading.Lock()

_L = ParamPoly.lam()
_A = ParamPoly.alpha()

ROUTES = ("A", "B", "C", "D", "E", "F")


def simsek_y1(n: int, k: int) -> ParamPoly:
    """Simsek number y1(n,k) = (1/k!) sum_j C(k,j) j^n l^j, with 0^0 = 1."""
    if n < 0 or k < 0:
        return ParamPoly()
    inv = Fraction(1, math.factorial(k))
    out = ParamPoly()
    for j in range(k + 1):
        c = inv * math.comb(k, j) * j**n
        if c:
            out = out + ParamPoly.term(c, j, 0)
    return out


def simsek_y1_via_gf(n: int, k: int) -> ParamPoly:
    """Independent route for y1: n! [t^n] (l*e^t+1)^k / k!."""
    base = exp_t(n, PP) * _L + 1
    series = base**k
    return series.coeffs[n] * Fraction(math.factorial(n), math.factorial(k))


def deg_simsek_y1(n: int, k: int) -> ParamPoly:
    """Degenerate Simsek number y1(n,k) of the log-compose family:
    (1/k!) sum_{m<=n} sum_{j<=k} C(k,j) j^m l^j a^(n-m) s(n,m)."""
    if n < 0 or k < 0:
        return ParamPoly()
    inv = Fraction(1, math.factorial(k))
    out = ParamPoly()
    for m in range(n + 1):
        s1 = stirling1(n, m)
        if s1 == 0:
            continue
        for j in range(k + 1):
            c = inv * math.comb(k, j) * j**m * s1
            if c:
                out = out + ParamPoly.term(c, j, n - m)
    return out


def deg_simsek_y1_alt(n: int, k: int) -> ParamPoly:
    """Second route for the same family:
    (1/k!) sum_j C(k,j) l^j (j)_{n,a}, the a^n (j/a)_n product read as the
    polynomial prod_{i<n} (j - i*a)."""
    if n < 0 or k < 0:
        return ParamPoly()
    inv = Fraction(1, math.factorial(k))
    out = ParamPoly()
    for j in range(k + 1):
        prod = degenerate_falling(ParamPoly.const(j), n, _A)
        out = out + prod * ParamPoly.term(inv * math.comb(k, j), j, 0)
    return out


# ---------------------------------------------------------------------------
# The generating function F_k and the six y1star routes.
# ---------------------------------------------------------------------------

_fk_cache: dict[int, TruncSeries] = {}


def fk_series(k: int, order: int, lam=None, alpha=None) -> TruncSeries:
    """F_k(t) = (l*e^t + 1)_{k,a}/k! truncated at `order`.

    Symbolic over ParamPoly by default; pass rationals lam/alpha for a
    specialized series over plain fractions.
    """
    if lam is None and alpha is None:
        with _lock:
            cached = _fk_cache.get(k)
            if cached is not None and cached.order >= order:
                return cached.truncate(order)
        base = exp_t(order, PP) * _L + 1
        series = degenerate_falling(base, k, _A) * Fraction(1, math.factorial(k))
        with _lock:
            _fk_cache[k] = series
        return series
    lam = Fraction(lam)
    alpha = Fraction(alpha)
    base = exp_t(order, QQ) * lam + 1
    return degenerate_falling(base, k, alpha) * Fraction(1, math.factorial(k))


def fk_series_via_bernoulli(k: int, order: int, lam, alpha) -> TruncSeries:
    """Cross-check representation of F_k at a rational point with alpha != 0:
    (a^k/k!) * B_k^(k+1)((l*e^t+1)/a + 1), using the order-(k+1) Bernoulli
    polynomial evaluated at a series argument."""
    lam = Fraction(lam)
    alpha = Fraction(alpha)
    if alpha == 0:
        raise ValueError("the Bernoulli representation needs alpha != 0")
    x = (exp_t(order, QQ) * lam + 1) * (1 / alpha) + 1
    poly = bernoulli_poly(k, k + 1, x)
    return poly * Fraction(alpha**k, math.factorial(k))


def _route_a(n: int, k: int) -> ParamPoly:
    series = fk_series(k, n)
    return series.coeffs[n] * math.factorial(n)


def _route_b(n: int, k: int) -> ParamPoly:
    inv = Fraction(1, math.factorial(k))
    out = ParamPoly()
    for l in range(k + 1):
        s1 = stirling1(k, l)
        if s1 == 0:
            continue
        for j in range(l + 1):
            c = inv * math.comb(l, j) * s1 * j**n
            if c:
                out = out + ParamPoly.term(c, j, k - l)
    return out


def _route_c(n: int, k: int) -> ParamPoly:
    # (1)_{k-l,a} here follows the derivation (step parameter a); the
    # printed step-j variant is exercised separately by the verifier.
    inv = Fraction(1, math.factorial(k))
    out = ParamPoly()
    for l in range(k + 1):
        ones = degenerate_falling(ParamPoly.const(1), k - l, _A)
        if ones.is_zero:
            continue
        for j in range(l + 1):
            s1 = stirling1(l, j)
            if s1 == 0:
                continue
            c = inv * math.comb(k, l) * s1 * j**n
            if c:
                out = out + ones * ParamPoly.term(c, j, l - j)
    return out


def route_c_printed(n: int, k: int) -> ParamPoly:
    """The step-j reading (1)_{k-l,j} of route C as printed; kept only so the
    verifier can report that it disagrees with the other routes."""
    inv = Fraction(1, math.factorial(k))
    out = ParamPoly()
    for l in range(k + 1):
        for j in range(l + 1):
            s1 = stirling1(l, j)
            if s1 == 0:
                continue
            ones = 1
            for i in range(k - l):
                ones *= 1 - i * j
            c = inv * math.comb(k, l) * s1 * ones * j**n
            if c:
                out = out + ParamPoly.term(c, j, l - j)
    return out


def _route_d(n: int, k: int) -> ParamPoly:
    if k == 0:
        return ParamPoly.const(1) if n == 0 else ParamPoly()
    inv = Fraction(1, math.factorial(k))
    out = ParamPoly()
    for j in range(1, k + 1):  # the j = 0 term carries the factor j/k = 0
        w = inv * math.comb(k, j) * Fraction(j, k) * bernoulli_number(k - j, k)
        if w == 0:
            continue
        for i in range(j + 1):
            c = w * math.comb(j, i) * i**n
            if c:
                out = out + ParamPoly.term(c, i, k - j)
    return out


class _Triangle:
    """Grow-only (n,k)-triangle of ParamPoly values filled by a recurrence."""

    def __init__(self, fill):
        self.cells: dict[tuple[int, int], ParamPoly] = {}
        self.n_max = -1
        self.k_max = -1
        self._fill = fill

    def get(self, n: int, k: int) -> ParamPoly:
        with _lock:
            if n > self.n_max or k > self.k_max:
                self._fill(self.cells, max(n, self.n_max), max(k, self.k_max))
                self.n_max = max(n, self.n_max)
                self.k_max = max(k, self.k_max)
            return self.cells[(n, k)]


def _fill_k_recurrence(cells, n_max, k_max):
    for n in range(n_max + 1):
        cells[(n, 0)] = ParamPoly.const(1) if n == 0 else ParamPoly()
    for k in range(k_max):
        shrink = 1 - _A * k
        for n in range(n_max + 1):
            if (n, k + 1) in cells:
                continue
            acc = ParamPoly()
            for i in range(n + 1):
                acc = acc + cells[(i, k)] * math.comb(n, i)
            value = (_L * acc + shrink * cells[(n, k)]) * Fraction(1, k + 1)
            cells[(n, k + 1)] = value


def _fill_n_recurrence(cells, n_max, k_max):
    for n in range(n_max + 1):
        cells[(n, 0)] = ParamPoly.const(1) if n == 0 else ParamPoly()
    for k in range(1, k_max + 1):
        inv_k = Fraction(1, k)
        if (0, k) not in cells:
            cells[(0, k)] = (degenerate_falling(_L + 1, k, _A)
                             * Fraction(1, math.factorial(k)))
        tail = (1 + _A - _A * k) * inv_k
        for n in range(n_max):
            if (n + 1, k) in cells:
                continue
            acc = ParamPoly()
            for j in range(n + 1):
                acc = acc + (cells[(j, k - 1)] + cells[(j + 1, k - 1)]) \
                    * math.comb(n, j)
            cells[(n + 1, k)] = _L * acc * inv_k + tail * cells[(n + 1, k - 1)]


_triangle_e = _Triangle(_fill_k_recurrence)
_triangle_f = _Triangle(_fill_n_recurrence)


def y1star(n: int, k: int, route: str = "A") -> ParamPoly:
    """New-type degenerate Simsek number y1star(n,k) by the chosen route.

    All six routes return identical polynomials in (l, a); route A is the
    definition, the others exist to be checked against it.
    """
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
    if n < 0 or k < 0:
        return ParamPoly()
    if route == "A":
        return _route_a(n, k)
    if route == "B":
        return _route_b(n, k)
    if route == "C":
        return _route_c(n, k)
    if route == "D":
        return _route_d(n, k)
    if route == "E":
        return _triangle_e.get(n, k)
    return _triangle_f.get(n, k)


def y1star_gf_coeffs(k: int, order: int) -> TruncSeries:
    """The truncated generating function F_k with symbolic coefficients;
    coefficient n equals y1star(n,k)/n!."""
    return fk_series(k, order)


def warm_caches(n_max: int, k_max: int) -> None:
    """Precompute every route's tables up to (n_max, k_max)."""
    for k in range(k_max + 1):
        fk_series(k, n_max)
    _triangle_e.get(n_max, k_max)
    _triangle_f.get(n_max, k_max)


FAMILY_FUNCS = {
    "y1": simsek_y1,
    "y1deg": deg_simsek_y1,
}
