"""Exact arithmetic substrate: rationals, sparse (l, a) polynomials, and
truncated formal power series over a pluggable coefficient ring.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.  Series keep
coefficients only up to an explicit truncation order; no operation ever
consults a coefficient beyond it.
"""

from __future__ import annotations

from fractions import Fraction
import math

Rational = Fraction


class SeriesStructureError(ValueError):
    """Two series were combined whose variable or order disagree."""


class SeriesDomainError(ValueError):
    """A series operation was applied outside its domain (e.g. exp of a
    series with nonzero constant term, reciprocal of a non-unit)."""


def parse_rational(text: str) -> Fraction:
    """Parse the canonical 'p/q' (or plain 'p') rendering into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc


def render_rational(value: Fraction) -> str:
    # Fraction already normalizes: positive denominator, sign on numerator,
    # "p" when the denominator is 1.
    return str(value)


# ---------------------------------------------------------------------------
# Sparse polynomials in the two deformation parameters, written l and a.
# ---------------------------------------------------------------------------

class ParamPoly:
    """Polynomial in the parameters l and a with exact rational coefficients.

    Terms live in a dict mapping (deg_l, deg_a) to a nonzero Fraction.
    The canonical text form lists terms with deg_l descending and, within
    equal deg_l, deg_a ascending: "1*l^2 + 1*l + -1/2*l*a".
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[(int(i), int(j))] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c) -> "ParamPoly":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def term(cls, c, deg_l: int, deg_a: int) -> "ParamPoly":
        return cls({(deg_l, deg_a): Fraction(c)})

    @classmethod
    def lam(cls) -> "ParamPoly":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def alpha(cls) -> "ParamPoly":
        return cls({(0, 1): Fraction(1)})

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg_l(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    @property
    def deg_a(self) -> int:
        return max((j for _, j in self.terms), default=0)

    def constant_value(self) -> Fraction:
        """The value of a degree-(0,0) polynomial; error otherwise."""
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {(0, 0)}:
            return self.terms[(0, 0)]
        raise SeriesDomainError(f"not a constant polynomial: {self}")

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "ParamPoly | None":
        if isinstance(other, ParamPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPoly({(0, 0): Fraction(other)})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for key, c in o.terms.items():
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        p = ParamPoly.__new__(ParamPoly)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = ParamPoly.__new__(ParamPoly)
        p.terms = {key: -c for key, c in self.terms.items()}
        return p

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                key = (i1 + i2, j1 + j2)
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        p = ParamPoly.__new__(ParamPoly)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = ParamPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    # -- evaluation, substitution, extraction --------------------------------

    def evaluate(self, lam0, alpha0) -> Fraction:
        """Exact substitution (l, a) -> (lam0, alpha0); a ring homomorphism."""
        lam0 = Fraction(lam0)
        alpha0 = Fraction(alpha0)
        total = Fraction(0)
        for (i, j), c in self.terms.items():
            total += c * lam0**i * alpha0**j
        return total

    def substitute(self, lam=None, alpha=None) -> "ParamPoly":
        """Substitute rationals for either or both parameters, keeping the
        other symbolic."""
        out = ParamPoly()
        for (i, j), c in self.terms.items():
            factor = c
            if lam is not None:
                factor *= Fraction(lam) ** i
                i = 0
            if alpha is not None:
                factor *= Fraction(alpha) ** j
                j = 0
            out = out + ParamPoly.term(factor, i, j)
        return out

    def coeff_l(self, d: int) -> "ParamPoly":
        """Coefficient of l^d, as a polynomial in a alone."""
        p = ParamPoly.__new__(ParamPoly)
        p.terms = {(0, j): c for (i, j), c in self.terms.items() if i == d}
        return p

    # -- canonical text ------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda key: (-key[0], key[1])):
            factors = [str(self.terms[(i, j)])]
            if i:
                factors.append("l" if i == 1 else f"l^{i}")
            if j:
                factors.append("a" if j == 1 else f"a^{j}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"ParamPoly({self.render()})"


def render_scalar(value) -> str:
    """Canonical text of a table/report cell: Rational or ParamPoly."""
    if isinstance(value, ParamPoly):
        return value.render()
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    raise TypeError(f"no canonical rendering for {type(value).__name__}")


# ---------------------------------------------------------------------------
# Coefficient-ring descriptors.  A ring knows its zero/one, how to coerce
# plain scalars into itself, and how to invert a unit; everything else is
# handled by the elements' own operators.
# ---------------------------------------------------------------------------

class RationalField:
    name = "QQ"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, value):
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into QQ")

    def invert(self, value):
        if value == 0:
            raise SeriesDomainError("division by zero in QQ")
        return 1 / Fraction(value)


class ParamPolyRing:
    name = "QQ[l,a]"

    @property
    def zero(self):
        return ParamPoly()

    @property
    def one(self):
        return ParamPoly.const(1)

    def coerce(self, value):
        if isinstance(value, ParamPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return ParamPoly.const(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into QQ[l,a]")

    def invert(self, value):
        value = self.coerce(value)
        c = value.constant_value()  # raises unless value is constant
        if c == 0:
            raise SeriesDomainError("division by zero in QQ[l,a]")
        return ParamPoly.const(1 / c)


QQ = RationalField()
PP = ParamPolyRing()


class SeriesRing:
    """Ring of truncated series in `var` to order `order` over `coeff_ring`.

    Used as the coefficient ring of an outer series for bivariate work
    (a series in x whose coefficients are series in t).
    """

    def __init__(self, coeff_ring, var: str, order: int):
        self.coeff_ring = coeff_ring
        self.var = var
        self.order = order
        self.name = f"{coeff_ring.name}[[{var}]]/{var}^{order + 1}"

    @property
    def zero(self):
        return TruncSeries.constant(self.coeff_ring.zero, self.var, self.order, self.coeff_ring)

    @property
    def one(self):
        return TruncSeries.constant(self.coeff_ring.one, self.var, self.order, self.coeff_ring)

    def coerce(self, value):
        if isinstance(value, TruncSeries) and value.var == self.var:
            if value.order != self.order:
                raise SeriesStructureError(
                    f"order mismatch coercing into {self.name}: {value.order}")
            return value
        return TruncSeries.constant(
            self.coeff_ring.coerce(value), self.var, self.order, self.coeff_ring)

    def invert(self, value):
        return series_reciprocal(self.coerce(value))


def ring_of(value):
    """The ring descriptor a given element belongs to."""
    if isinstance(value, (int, Fraction)):
        return QQ
    if isinstance(value, ParamPoly):
        return PP
    if isinstance(value, TruncSeries):
        return SeriesRing(value.ring, value.var, value.order)
    raise TypeError(f"no ring for {type(value).__name__}")


# ---------------------------------------------------------------------------
# Truncated formal power series.
# ---------------------------------------------------------------------------

class TruncSeries:
    """Formal power series in one named variable, truncated at a fixed order.

    `coeffs` is a tuple of order+1 coefficient-ring elements; coefficient j
    of any operation depends only on input coefficients 0..j, so truncating
    an order-N result to M <= N equals computing at order M directly.
    """

    __slots__ = ("var", "order", "coeffs", "ring")

    def __init__(self, var: str, order: int, coeffs, ring):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        coeffs = [ring.coerce(c) for c in coeffs]
        if len(coeffs) < order + 1:
            coeffs.extend(ring.zero for _ in range(order + 1 - len(coeffs)))
        self.var = var
        self.order = order
        self.coeffs = tuple(coeffs[: order + 1])
        self.ring = ring

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, var: str, order: int, ring) -> "TruncSeries":
        return cls(var, order, [c], ring)

    @classmethod
    def variable(cls, var: str, order: int, ring) -> "TruncSeries":
        if order == 0:
            return cls(var, order, [ring.zero], ring)
        return cls(var, order, [ring.zero, ring.one], ring)

    # -- helpers -------------------------------------------------------------

    def _check_compatible(self, other: "TruncSeries"):
        if self.var != other.var:
            raise SeriesStructureError(
                f"variable mismatch: {self.var!r} vs {other.var!r}")
        if self.order != other.order:
            raise SeriesStructureError(
                f"order mismatch: {self.order} vs {other.order}")

    def _is_series_operand(self, other) -> bool:
        return isinstance(other, TruncSeries) and other.var == self.var

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise SeriesStructureError(
                f"cannot extend order {self.order} series to {order}")
        return TruncSeries(self.var, order, self.coeffs[: order + 1], self.ring)

    def constant_term(self):
        return self.coeffs[0]

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if self._is_series_operand(other):
            self._check_compatible(other)
            coeffs = [a + b for a, b in zip(self.coeffs, other.coeffs)]
        else:
            try:
                scalar = self.ring.coerce(other)
            except TypeError:
                return NotImplemented
            coeffs = list(self.coeffs)
            coeffs[0] = coeffs[0] + scalar
        return TruncSeries(self.var, self.order, coeffs, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.var, self.order, [-c for c in self.coeffs], self.ring)

    def __sub__(self, other):
        if self._is_series_operand(other):
            self._check_compatible(other)
            coeffs = [a - b for a, b in zip(self.coeffs, other.coeffs)]
            return TruncSeries(self.var, self.order, coeffs, self.ring)
        try:
            scalar = self.ring.coerce(other)
        except TypeError:
            return NotImplemented
        coeffs = list(self.coeffs)
        coeffs[0] = coeffs[0] - scalar
        return TruncSeries(self.var, self.order, coeffs, self.ring)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._is_series_operand(other):
            self._check_compatible(other)
            n = self.order
            zero = self.ring.zero
            out = [zero] * (n + 1)
            for i, a in enumerate(self.coeffs):
                if a == zero:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b == zero:
                        continue
                    out[i + j] = out[i + j] + a * b
            return TruncSeries(self.var, n, out, self.ring)
        # scalar: int, Fraction, or a coefficient-ring element
        try:
            scalar = self.ring.coerce(other)
        except TypeError:
            return NotImplemented
        return TruncSeries(self.var, self.order,
                           [c * scalar for c in self.coeffs], self.ring)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("series powers must be non-negative integers")
        result = self.ring_one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def ring_one(self) -> "TruncSeries":
        return TruncSeries.constant(self.ring.one, self.var, self.order, self.ring)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return (self.var == other.var and self.order == other.order
                    and self.coeffs == other.coeffs)
        try:
            scalar = self.ring.coerce(other)
        except (TypeError, SeriesStructureError):
            return NotImplemented
        zero = self.ring.zero
        return self.coeffs[0] == scalar and all(c == zero for c in self.coeffs[1:])

    __hash__ = None

    # -- canonical text ------------------------------------------------------

    def render(self) -> str:
        cells = []
        for c in self.coeffs:
            if isinstance(c, TruncSeries):
                cells.append(c.render())
            else:
                cells.append(render_scalar(c))
        return "[" + ", ".join(cells) + "]"

    def __repr__(self):
        return f"TruncSeries({self.var!r}, N={self.order}, {self.render()})"


# ---------------------------------------------------------------------------
# Series operations.
# ---------------------------------------------------------------------------

def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the common order."""
    if not isinstance(b, TruncSeries):
        raise SeriesStructureError("series_mul needs two series")
    a._check_compatible(b)
    return a * b


def series_exp(a: TruncSeries) -> TruncSeries:
    """Formal exponential of a series with zero constant term.

    Solves e' = a'·e coefficient-wise: n·e_n = sum_{j=1..n} j·a_j·e_{n-j},
    which only ever divides by integers (exact over rational-based rings).
    """
    zero = a.ring.zero
    if a.coeffs[0] != zero:
        raise SeriesDomainError("series_exp needs zero constant term")
    n = a.order
    out = [a.ring.one] + [zero] * n
    for m in range(1, n + 1):
        acc = zero
        for j in range(1, m + 1):
            if a.coeffs[j] != zero:
                acc = acc + (a.coeffs[j] * out[m - j]) * j
        out[m] = acc * Fraction(1, m)
    return TruncSeries(a.var, n, out, a.ring)


def series_log1p(a: TruncSeries) -> TruncSeries:
    """log(1 + a) for a with zero constant term.

    Coefficient recurrence n·l_n = n·a_n - sum_{j=1..n-1} j·l_j·a_{n-j}.
    """
    zero = a.ring.zero
    if a.coeffs[0] != zero:
        raise SeriesDomainError("series_log1p needs zero constant term")
    n = a.order
    out = [zero] * (n + 1)
    for m in range(1, n + 1):
        acc = a.coeffs[m] * m
        for j in range(1, m):
            if out[j] != zero and a.coeffs[m - j] != zero:
                acc = acc - (out[j] * a.coeffs[m - j]) * j
        out[m] = acc * Fraction(1, m)
    return TruncSeries(a.var, n, out, a.ring)


def series_reciprocal(a: TruncSeries) -> TruncSeries:
    """b with a·b = 1 up to the truncation order; the constant term of a
    must be invertible in the coefficient ring."""
    inv0 = a.ring.invert(a.coeffs[0])
    n = a.order
    zero = a.ring.zero
    out = [inv0] + [zero] * n
    for m in range(1, n + 1):
        acc = zero
        for j in range(1, m + 1):
            if a.coeffs[j] != zero:
                acc = acc + a.coeffs[j] * out[m - j]
        out[m] = -(inv0 * acc)
    return TruncSeries(a.var, n, out, a.ring)


def series_compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    """outer(inner) for inner with zero constant term, by Horner evaluation
    in the truncated series ring."""
    outer._check_compatible(inner)
    if inner.coeffs[0] != inner.ring.zero:
        raise SeriesDomainError("series_compose needs zero inner constant term")
    result = TruncSeries.constant(outer.coeffs[outer.order], outer.var,
                                  outer.order, outer.ring)
    for m in range(outer.order - 1, -1, -1):
        result = result * inner + outer.coeffs[m]
    return result


def series_differentiate(a: TruncSeries) -> TruncSeries:
    """Formal derivative; the order drops by one (clamped at zero)."""
    n = max(a.order - 1, 0)
    coeffs = [a.coeffs[j + 1] * (j + 1) for j in range(a.order)]
    if not coeffs:
        coeffs = [a.ring.zero]
    return TruncSeries(a.var, n, coeffs, a.ring)


def series_integrate(a: TruncSeries, order: int | None = None) -> TruncSeries:
    """Formal antiderivative with zero constant term.  By default the order
    rises to N+1; pass `order` to clamp the result."""
    n = a.order + 1 if order is None else order
    zero = a.ring.zero
    out = [zero] * (n + 1)
    for j in range(1, n + 1):
        if j - 1 <= a.order and a.coeffs[j - 1] != zero:
            out[j] = a.coeffs[j - 1] * Fraction(1, j)
    return TruncSeries(a.var, n, out, a.ring)


def exp_t(order: int, ring=QQ, var: str = "t") -> TruncSeries:
    """The exponential series e^var to the given order."""
    return TruncSeries(var, order,
                       [Fraction(1, math.factorial(m)) for m in range(order + 1)],
                       ring)


def poly_eval(p: ParamPoly, lam0, alpha0) -> Fraction:
    """Exact evaluation of a parameter polynomial at a rational point."""
    return p.evaluate(lam0, alpha0)
