"""Classical special-number families: Stirling numbers of both kinds,
(degenerate) falling factorials, and higher-order Bernoulli numbers and
polynomials.

Triangles are filled by their defining recurrences with memoized rows; the
generating-function route is kept in the test suite as an independent
cross-check, not here.  Caches only ever grow and hold immutable values;
fills run under a lock so concurrent readers see consistent tables.
"""

from __future__ import annotations

from fractions import Fraction
import math
import threading

from .algebra import QQ, TruncSeries, series_reciprocal

_lock = threading.Lock()

# Row r of each triangle holds the values for n = r, k = 0..r.
_S2_ROWS: list[list[int]] = [[1]]
_S1_ROWS: list[list[int]] = [[1]]


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind: partitions of an n-set into k
    non-empty blocks.  Out-of-range indices give 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    with _lock:
        while len(_S2_ROWS) <= n:
            r = len(_S2_ROWS)
            prev = _S2_ROWS[r - 1]
            row = [0] * (r + 1)
            for j in range(r + 1):
                above = prev[j] if j <= r - 1 else 0
                left = prev[j - 1] if j >= 1 else 0
                row[j] = j * above + left
            _S2_ROWS.append(row)
        return _S2_ROWS[n][k]


def stirling1(n: int, k: int) -> int:
    """Signed Stirling number of the first kind: the coefficient of x^k in
    the falling factorial x(x-1)...(x-n+1)."""
    if n < 0 or k < 0 or k > n:
        return 0
    with _lock:
        while len(_S1_ROWS) <= n:
            r = len(_S1_ROWS)
            prev = _S1_ROWS[r - 1]
            row = [0] * (r + 1)
            for j in range(r + 1):
                above = prev[j] if j <= r - 1 else 0
                left = prev[j - 1] if j >= 1 else 0
                row[j] = left - (r - 1) * above
            _S1_ROWS.append(row)
        return _S1_ROWS[n][k]


def falling_factorial(x, n: int):
    """x(x-1)...(x-n+1) for x in any commutative ring of the kit; the empty
    product is 1."""
    if n < 0:
        raise ValueError("falling factorial needs n >= 0")
    result = x * 0 + 1
    for i in range(n):
        result = result * (x - i)
    return result


def degenerate_falling(x, n: int, alpha):
    """x(x-alpha)(x-2*alpha)...(x-(n-1)*alpha); reduces to x^n at alpha=0
    and to the ordinary falling factorial at alpha=1."""
    if n < 0:
        raise ValueError("degenerate falling factorial needs n >= 0")
    result = x * 0 + 1
    for i in range(n):
        result = result * (x - alpha * i)
    return result


# ---------------------------------------------------------------------------
# Higher-order Bernoulli numbers B_n^(k) and polynomials B_k^(n)(x):
#   (t/(e^t-1))^k       = sum_n B_n^(k) t^n/n!
#   t^n e^{xt}/(e^t-1)^n = sum_k B_k^(n)(x) t^k/k!
# ---------------------------------------------------------------------------

_bern_series_cache: dict[int, TruncSeries] = {}
_bern_poly_cache: dict[tuple[int, int], tuple[Fraction, ...]] = {}


def _bernoulli_base(order: int) -> TruncSeries:
    # t/(e^t - 1) as a reciprocal of sum_m t^m/(m+1)!
    coeffs = [Fraction(1, math.factorial(m + 1)) for m in range(order + 1)]
    return series_reciprocal(TruncSeries("t", order, coeffs, QQ))


def _bernoulli_power(k: int, order: int) -> TruncSeries:
    with _lock:
        cached = _bern_series_cache.get(k)
        if cached is not None and cached.order >= order:
            return cached.truncate(order)
        series = _bernoulli_base(order) ** k
        _bern_series_cache[k] = series
        return series


def bernoulli_number(n: int, k: int) -> Fraction:
    """Bernoulli number of order k: n! times coefficient n of (t/(e^t-1))^k."""
    if n < 0 or k < 0:
        raise ValueError("bernoulli_number needs n, k >= 0")
    return _bernoulli_power(k, n).coeffs[n] * math.factorial(n)


def bernoulli_poly_coeffs(k: int, n: int) -> tuple[Fraction, ...]:
    """Coefficients c_0..c_k of B_k^(n)(x) = sum_j C(k,j) B_{k-j}^(n) x^j."""
    key = (k, n)
    cached = _bern_poly_cache.get(key)
    if cached is None:
        cached = tuple(
            Fraction(math.comb(k, j)) * bernoulli_number(k - j, n)
            for j in range(k + 1))
        with _lock:
            _bern_poly_cache[key] = cached
    return cached


def bernoulli_poly(k: int, n: int, x):
    """B_k^(n)(x) evaluated at a ring element x (rational, polynomial, or
    series) by Horner on the binomial-convolution coefficients."""
    coeffs = bernoulli_poly_coeffs(k, n)
    result = x * 0 + coeffs[k]
    for j in range(k - 1, -1, -1):
        result = result * x + coeffs[j]
    return result


def warm_caches(n_max: int, k_max: int) -> None:
    """Precompute triangles and Bernoulli tables to a bound, so later
    concurrent readers never trigger a fill."""
    stirling2(n_max, 0)
    stirling1(n_max, 0)
    for k in range(k_max + 1):
        _bernoulli_power(k, n_max)
