"""Exact truncated Laurent-Puiseux series over the rationals.

A series is stored as a finite map ``k -> c_k`` of nonzero Fractions together
with a positive integer ``unit`` M and an integer ``precision`` P, and denotes

    sum_k c_k * q**(k/M)  +  O(q**(P/M))

All exponent numerators satisfy ``k < P``; negative numerators (a Laurent
part) are allowed and the key set is always finite.  Two series combine by
lifting both to the lcm of their units.  Canonical form drops zero
coefficients and reduces the unit by the gcd of all numerators and the
precision, so a lift followed by normalisation is the identity.

Precision bookkeeping:

* ``f + g``        -> min(Pf, Pg)
* ``f * g``        -> min(Pf + ord g, Pg + ord f)   (ord of zero = precision)
* ``f.invert()``   -> Pf - 2 ord f
* ``f.nth_root(n)``-> (Pf - ord f) + ord f / n
* ``f ** n``       -> Pf + (n-1) ord f  for n >= 1
* ``f.compose(g)`` -> min over contributing terms, capped at ord(g) * Pf

No operation ever reports a coefficient at or beyond its declared precision.
Series are immutable after construction; all operations are pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Union

Rational = Union[int, Fraction]


class SeriesError(ValueError):
    """Base class for series arithmetic errors."""


class ZeroSeriesError(SeriesError):
    """Inversion or division by a series that is zero to its precision."""


class RootError(SeriesError):
    """An n-th root does not exist over the rationals as requested."""


class PrecisionError(SeriesError):
    """A coefficient was requested at or beyond the stored precision."""


class CompositionError(SeriesError):
    """compose/revert precondition violated (order or unit constraints)."""


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _int_nth_root(x: int, n: int) -> tuple[int, bool]:
    """Largest integer r with r**n <= x, and whether r**n == x (x >= 0)."""
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0 or n == 1:
        return x, True
    r = 1 << ((x.bit_length() + n - 1) // n)
    while True:
        nr = ((n - 1) * r + x // r ** (n - 1)) // n
        if nr >= r:
            break
        r = nr
    if (r + 1) ** n <= x:
        r += 1
    return r, r ** n == x


def _fraction_nth_root(c: Fraction, n: int) -> Fraction:
    """Exact rational n-th root of c, real-root sign convention.

    Raises RootError for an even root of a negative number or when the
    numerator/denominator are not perfect n-th powers.
    """
    negative = c < 0
    if negative and n % 2 == 0:
        raise RootError(f"even root of negative leading coefficient {c}")
    num, exact_num = _int_nth_root(abs(c.numerator), n)
    den, exact_den = _int_nth_root(c.denominator, n)
    if not (exact_num and exact_den):
        raise RootError(f"leading coefficient {c} is not an exact rational {n}-th power")
    root = Fraction(num, den)
    return -root if negative else root


@dataclass(frozen=True)
class Mismatch:
    exponent: Fraction
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class Comparison:
    """Outcome of an equality check: success up to ``verified_to`` or a witness."""

    ok: bool
    verified_to: Fraction
    mismatch: Mismatch | None = None

    def __bool__(self) -> bool:
        return self.ok


class PuiseuxSeries:
    __slots__ = ("unit", "precision", "_terms")

    def __init__(self, unit: int, terms: dict[int, Fraction], precision: int):
        if unit < 1:
            raise SeriesError(f"unit must be >= 1, got {unit}")
        clean: dict[int, Fraction] = {}
        for k, c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            if k >= precision:
                raise PrecisionError(
                    f"term at exponent {Fraction(k, unit)} is at or beyond "
                    f"precision O(q^{Fraction(precision, unit)})"
                )
            clean[int(k)] = c
        g = unit
        for k in clean:
            g = gcd(g, k)
        g = gcd(g, precision)
        if g > 1:
            clean = {k // g: c for k, c in clean.items()}
            unit //= g
            precision //= g
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "precision", precision)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):  # immutability guard
        raise AttributeError("PuiseuxSeries is immutable")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_terms(
        cls,
        unit: int,
        terms: Iterable[tuple[int, Rational]],
        precision: int,
    ) -> "PuiseuxSeries":
        seen: dict[int, Fraction] = {}
        for k, c in terms:
            if k in seen:
                raise SeriesError(f"duplicate exponent numerator {k}")
            seen[k] = Fraction(c)
        return cls(unit, seen, precision)

    @classmethod
    def zero(cls, precision: Rational = 1, unit: int = 1) -> "PuiseuxSeries":
        unit, pnum = _precision_numerator(precision, unit)
        return cls(unit, {}, pnum)

    @classmethod
    def one(cls, precision: Rational = 1, unit: int = 1) -> "PuiseuxSeries":
        unit, pnum = _precision_numerator(precision, unit)
        return cls(unit, {0: Fraction(1)}, pnum)

    @classmethod
    def monomial(
        cls, coefficient: Rational, exponent: Rational, precision: Rational
    ) -> "PuiseuxSeries":
        e = Fraction(exponent)
        p = Fraction(precision)
        unit = _lcm(e.denominator, p.denominator)
        return cls(
            unit,
            {int(e * unit): Fraction(coefficient)},
            int(p * unit),
        )

    # ------------------------------------------------------------------
    # basic queries
    # ------------------------------------------------------------------
    def is_zero(self) -> bool:
        """True when no coefficient is known to be nonzero (zero to precision)."""
        return not self._terms

    @property
    def order_numerator(self) -> int:
        """Least exponent numerator; by convention precision for the zero series."""
        return min(self._terms) if self._terms else self.precision

    @property
    def order(self) -> Fraction:
        return Fraction(self.order_numerator, self.unit)

    @property
    def precision_exponent(self) -> Fraction:
        return Fraction(self.precision, self.unit)

    def items(self) -> Iterator[tuple[Fraction, Fraction]]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        for k in sorted(self._terms):
            yield Fraction(k, self.unit), self._terms[k]

    def numerator_items(self) -> list[tuple[int, Fraction]]:
        return sorted(self._terms.items())

    def coefficient(self, exponent: Rational) -> Fraction:
        e = Fraction(exponent)
        if e >= self.precision_exponent:
            raise PrecisionError(
                f"coefficient at q^{e} requested but series only known to "
                f"O(q^{self.precision_exponent})"
            )
        k = e * self.unit
        if k.denominator != 1:
            return Fraction(0)
        return self._terms.get(int(k), Fraction(0))

    def __repr__(self) -> str:
        parts = []
        for e, c in list(self.items())[:6]:
            parts.append(f"{c}*q^({e})")
        if len(self._terms) > 6:
            parts.append("...")
        parts.append(f"O(q^({self.precision_exponent}))")
        return "PuiseuxSeries(" + " + ".join(parts) + ")"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (
            self.unit == other.unit
            and self.precision == other.precision
            and self._terms == other._terms
        )

    __hash__ = None  # mutable-dict-backed; use equal_to_order for math equality

    # ------------------------------------------------------------------
    # unit handling
    # ------------------------------------------------------------------
    def lift_unit(self, factor: int) -> tuple[int, dict[int, Fraction], int]:
        """Raw (unit, terms, precision) scaled by an integer factor >= 1."""
        if factor == 1:
            return self.unit, self._terms, self.precision
        return (
            self.unit * factor,
            {k * factor: c for k, c in self._terms.items()},
            self.precision * factor,
        )

    def _unify(self, other: "PuiseuxSeries"):
        m = _lcm(self.unit, other.unit)
        _, t1, p1 = self.lift_unit(m // self.unit)
        _, t2, p2 = other.lift_unit(m // other.unit)
        return m, t1, p1, t2, p2

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------
    def __add__(self, other) -> "PuiseuxSeries":
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        m, t1, p1, t2, p2 = self._unify(other)
        p = min(p1, p2)
        out = {k: c for k, c in t1.items() if k < p}
        for k, c in t2.items():
            if k < p:
                out[k] = out.get(k, Fraction(0)) + c
        return PuiseuxSeries(m, out, p)

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxSeries":
        return PuiseuxSeries(
            self.unit, {k: -c for k, c in self._terms.items()}, self.precision
        )

    def __sub__(self, other) -> "PuiseuxSeries":
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PuiseuxSeries":
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Rational) -> "PuiseuxSeries":
        c = Fraction(c)
        if c == 0:
            return PuiseuxSeries(self.unit, {}, self.precision)
        return PuiseuxSeries(
            self.unit, {k: v * c for k, v in self._terms.items()}, self.precision
        )

    def __mul__(self, other) -> "PuiseuxSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        m, t1, p1, t2, p2 = self._unify(other)
        o1 = min(t1) if t1 else p1
        o2 = min(t2) if t2 else p2
        p = min(p1 + o2, p2 + o1)
        out = _convolve(t1, t2, p)
        return PuiseuxSeries(m, out, p)

    def __rmul__(self, other) -> "PuiseuxSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "PuiseuxSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1, 1) / Fraction(other))
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other) -> "PuiseuxSeries":
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        return other * self.invert()

    def invert(self) -> "PuiseuxSeries":
        """Multiplicative inverse; requires a nonzero leading term."""
        if not self._terms:
            raise ZeroSeriesError("cannot invert a series that is zero to its precision")
        v = min(self._terms)
        n = self.precision - v  # known coefficients past the leading one
        a = [self._terms.get(v + i, Fraction(0)) for i in range(n)]
        b = [Fraction(0)] * n
        b[0] = 1 / a[0]
        for j in range(1, n):
            s = Fraction(0)
            for i in range(1, j + 1):
                if a[i]:
                    s += a[i] * b[j - i]
            b[j] = -s / a[0]
        terms = {-v + j: b[j] for j in range(n) if b[j]}
        return PuiseuxSeries(self.unit, terms, self.precision - 2 * v)

    def __pow__(self, n: int) -> "PuiseuxSeries":
        if not isinstance(n, int):
            return NotImplemented
        return self.pow_int(n)

    def pow_int(self, n: int) -> "PuiseuxSeries":
        if n == 0:
            return PuiseuxSeries(self.unit, {0: Fraction(1)}, max(self.precision, 1))
        if n < 0:
            return self.invert().pow_int(-n)
        result = None
        base = self
        e = n
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # exponent substitution, roots, composition
    # ------------------------------------------------------------------
    def substitute_power(self, r: Rational) -> "PuiseuxSeries":
        """Return f(q**r) for rational r > 0."""
        r = Fraction(r)
        if r <= 0:
            raise SeriesError(f"substitute_power requires r > 0, got {r}")
        p, s = r.numerator, r.denominator
        return PuiseuxSeries(
            self.unit * s,
            {k * p: c for k, c in self._terms.items()},
            self.precision * p,
        )

    def nth_root(self, n: int) -> "PuiseuxSeries":
        """Principal n-th root; the leading coefficient must be a rational n-th power."""
        if n < 1:
            raise SeriesError(f"nth_root requires n >= 1, got {n}")
        if not self._terms:
            raise ZeroSeriesError("cannot take a root of the zero series")
        unit, terms, precision = self.unit, self._terms, self.precision
        v = min(terms)
        if v % n:
            f = n // gcd(abs(v), n)
            unit, terms, precision = self.lift_unit(f)
            v *= f
        a0 = terms[v]
        root0 = _fraction_nth_root(a0, n)
        m = precision - v
        h = [terms.get(v + i, Fraction(0)) / a0 for i in range(m)]  # 1 + ...
        g = _pow_one_plus(h, Fraction(1, n), m)
        out = {v // n + i: root0 * g[i] for i in range(m) if g[i]}
        return PuiseuxSeries(unit, out, v // n + m)

    def compose(self, g: "PuiseuxSeries") -> "PuiseuxSeries":
        """Return f(g(q)); requires integer exponents in f and ord(g) > 0."""
        if self.unit != 1:
            raise CompositionError(
                "compose requires the outer series to have integer exponents"
            )
        g_ord = g.precision_exponent if g.is_zero() else g.order
        if g_ord <= 0:
            raise CompositionError("compose requires ord(g) > 0")
        # The discarded tail of f contributes O(g**precision).
        cap = Fraction(self.precision) * g_ord
        unit = _lcm(cap.denominator, g.unit)
        result = PuiseuxSeries(unit, {}, int(cap * unit))
        const = self._terms.get(0)
        if const is not None:
            result = result + PuiseuxSeries(unit, {0: const}, int(cap * unit))
        pos = sorted(k for k in self._terms if k > 0)
        if pos:
            power = g
            prev = 1
            for k in pos:
                power = power * g.pow_int(k - prev) if k > prev else power
                prev = k
                result = result + power.scale(self._terms[k])
        neg = sorted((k for k in self._terms if k < 0), reverse=True)
        if neg:
            ginv = g.invert()
            power = ginv
            prev = -1
            for k in neg:
                power = power * ginv.pow_int(prev - k) if k < prev else power
                prev = k
                result = result + power.scale(self._terms[k])
        return result

    def derivative(self) -> "PuiseuxSeries":
        """Formal d/dq; requires integer exponents."""
        if self.unit != 1:
            raise CompositionError("derivative requires integer exponents")
        out = {k - 1: c * k for k, c in self._terms.items() if k != 0}
        return PuiseuxSeries(1, out, self.precision - 1)

    def revert(self) -> "PuiseuxSeries":
        """Compositional inverse of f = c*q + ... with c != 0."""
        if self.unit != 1 or self.order_numerator != 1 or self.is_zero():
            raise CompositionError(
                "revert requires a series c*q + O(q^2) with integer exponents"
            )
        p = self.precision
        if p < 2:
            raise CompositionError("revert needs precision of at least O(q^2)")
        c1 = self._terms[1]
        # Newton iteration g <- g - (f(g) - q)/f'(g), doubling correct order.
        g = PuiseuxSeries(1, {1: 1 / c1}, 2)
        fprime = self.derivative()
        known = 2
        while known < p:
            known = min(2 * known, p)
            g = PuiseuxSeries(1, dict(g._terms), known)
            fg = self.compose(g)
            err = fg - PuiseuxSeries(1, {1: Fraction(1)}, known)
            corr = err * fprime.compose(g).invert()
            g = (g - corr).truncate(known)
        return g.truncate(p)

    # ------------------------------------------------------------------
    # truncation, comparison, serialization
    # ------------------------------------------------------------------
    def truncate(self, order: Rational) -> "PuiseuxSeries":
        """Restrict to terms below ``order`` and lower precision accordingly."""
        o = Fraction(order)
        if o >= self.precision_exponent:
            return self
        unit = _lcm(self.unit, o.denominator)
        f = unit // self.unit
        pnum = int(o * unit)
        terms = {k * f: c for k, c in self._terms.items() if k * f < pnum}
        return PuiseuxSeries(unit, terms, pnum)

    def equal_to_order(
        self, other: "PuiseuxSeries", order: Rational | None = None
    ) -> Comparison:
        """Compare coefficients below min(order, both precisions); witness on failure."""
        bound = min(self.precision_exponent, other.precision_exponent)
        if order is not None:
            bound = min(bound, Fraction(order))
        m, t1, _, t2, _ = self._unify(other)
        limit = bound * m
        for k in sorted(set(t1) | set(t2)):
            if k >= limit:
                break
            lhs = t1.get(k, Fraction(0))
            rhs = t2.get(k, Fraction(0))
            if lhs != rhs:
                return Comparison(False, bound, Mismatch(Fraction(k, m), lhs, rhs))
        return Comparison(True, bound)

    def to_json_dict(self) -> dict:
        return {
            "unit": self.unit,
            "precision": self.precision,
            "terms": [[k, str(c)] for k, c in self.numerator_items()],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PuiseuxSeries":
        return cls.from_terms(
            data["unit"],
            [(int(k), Fraction(c)) for k, c in data["terms"]],
            data["precision"],
        )


def _coerce(value, template: PuiseuxSeries):
    if isinstance(value, PuiseuxSeries):
        return value
    if isinstance(value, (int, Fraction)):
        return PuiseuxSeries(
            template.unit, {0: Fraction(value)}, template.precision
        )
    return NotImplemented


def _precision_numerator(precision: Rational, unit: int) -> tuple[int, int]:
    p = Fraction(precision)
    u = _lcm(unit, p.denominator)
    return u, int(p * u)


def _convolve(
    t1: dict[int, Fraction], t2: dict[int, Fraction], pmax: int
) -> dict[int, Fraction]:
    """Convolution of term maps, dropping keys >= pmax.

    Both inputs are lifted to integer coefficients over a common denominator
    so the inner loop runs on machine/big ints.  A dense list path is used
    when both supports are nearly contiguous, a sorted sparse loop otherwise.
    """
    if not t1 or not t2:
        return {}
    d1 = 1
    for c in t1.values():
        d1 = _lcm(d1, c.denominator)
    d2 = 1
    for c in t2.values():
        d2 = _lcm(d2, c.denominator)
    n1 = {k: int(c * d1) for k, c in t1.items()}
    n2 = {k: int(c * d2) for k, c in t2.items()}
    lo1, hi1 = min(n1), max(n1)
    lo2, hi2 = min(n2), max(n2)
    span1, span2 = hi1 - lo1 + 1, hi2 - lo2 + 1
    den = d1 * d2
    out_span = min(pmax - lo1 - lo2, span1 + span2 - 1)
    if out_span <= 0:
        return {}
    dense = (
        span1 * span2 <= 1 << 22
        and 5 * len(n1) >= span1
        and 5 * len(n2) >= span2
    )
    result: dict[int, Fraction] = {}
    if dense:
        a = [0] * span1
        for k, c in n1.items():
            a[k - lo1] = c
        b = [0] * span2
        for k, c in n2.items():
            b[k - lo2] = c
        acc = [0] * out_span
        for i, ai in enumerate(a):
            if not ai or i >= out_span:
                continue
            jmax = min(span2, out_span - i)
            for j in range(jmax):
                bj = b[j]
                if bj:
                    acc[i + j] += ai * bj
        base = lo1 + lo2
        for i, v in enumerate(acc):
            if v:
                result[base + i] = Fraction(v, den)
        return result
    keys1 = sorted(n1)
    keys2 = sorted(n2)
    acc2: dict[int, int] = {}
    for k1 in keys1:
        if k1 + lo2 >= pmax:
            break
        a1 = n1[k1]
        for k2 in keys2:
            k = k1 + k2
            if k >= pmax:
                break
            acc2[k] = acc2.get(k, 0) + a1 * n2[k2]
    return {k: Fraction(v, den) for k, v in acc2.items() if v}


def _pow_one_plus(f: list[Fraction], p: Fraction, n: int) -> list[Fraction]:
    """Coefficients of (1 + f1 x + f2 x^2 + ...)**p to length n (f[0] == 1)."""
    g = [Fraction(0)] * n
    g[0] = Fraction(1)
    for j in range(1, n):
        s = Fraction(0)
        for i in range(1, j + 1):
            if f[i]:
                s += ((p + 1) * i - j) * f[i] * g[j - i]
        g[j] = s / j
    return g
