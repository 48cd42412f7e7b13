"""Classical modular objects: Eisenstein series, the Dedekind eta function and
eta quotients, the weight-one generators A, B, C for the four genus-zero
levels, Hauptmoduls, j-invariants of the four elliptic-curve families, and a
truncated Gauss hypergeometric series.

Every constructor takes a truncation ``order`` measured in the variable q and
returns a series whose precision is at least that order (builders pad
internally where divisions eat precision, then truncate back to ``order``).
"""
from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache

from .series import PuiseuxSeries, Rational, RootError, SeriesError, ZeroSeriesError


class LevelId(enum.Enum):
    """The four genus-zero levels; N1STAR is the index-2 subgroup case."""

    N1STAR = "N1star"
    N2 = "N2"
    N3 = "N3"
    N4 = "N4"


#: root degree r with alpha = C^r / A^r
LEVEL_ROOT = {LevelId.N1STAR: 6, LevelId.N2: 4, LevelId.N3: 3, LevelId.N4: 2}
#: leading coefficient kappa of the Hauptmodul alpha = kappa q + ...
LEVEL_KAPPA = {LevelId.N1STAR: 432, LevelId.N2: 64, LevelId.N3: 27, LevelId.N4: 16}
#: matching elliptic-curve family index for j_family
LEVEL_FAMILY = {LevelId.N1STAR: 8, LevelId.N2: 7, LevelId.N3: 6, LevelId.N4: 5}


def divisor_sigma(k: int, n: int) -> int:
    """Sum of k-th powers of the divisors of n."""
    if n < 1:
        raise ValueError(f"divisor_sigma needs n >= 1, got {n}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


@lru_cache(maxsize=None)
def eisenstein(k: int, order: int) -> PuiseuxSeries:
    """E_2, E_4 or E_6 as 1 + c * sum sigma_{k-1}(n) q^n."""
    try:
        c = {2: -24, 4: 240, 6: -504}[k]
    except KeyError:
        raise SeriesError(f"eisenstein weight must be 2, 4 or 6, got {k}") from None
    terms = {0: Fraction(1)}
    for n in range(1, order):
        terms[n] = Fraction(c * divisor_sigma(k - 1, n))
    return PuiseuxSeries(1, terms, order)


@lru_cache(maxsize=None)
def dedekind_eta(order: Rational) -> PuiseuxSeries:
    """q^(1/24) times the pentagonal-number sum, truncated at ``order`` in q."""
    order = Fraction(order)
    pnum = int(order * 24)
    if pnum <= 1:
        return PuiseuxSeries(24, {}, max(pnum, 1))
    terms = {1: Fraction(1)}
    n = 1
    while True:
        e1 = 24 * (n * (3 * n - 1) // 2) + 1
        e2 = 24 * (n * (3 * n + 1) // 2) + 1
        if e1 >= pnum and e2 >= pnum:
            break
        sign = Fraction(-1 if n % 2 else 1)
        if e1 < pnum:
            terms[e1] = sign
        if e2 < pnum:
            terms[e2] = sign
        n += 1
    return PuiseuxSeries(24, terms, pnum)


def eta_power(scale: int, power: int, order: Rational) -> PuiseuxSeries:
    """eta(q^scale)**power to precision ``order`` in q."""
    order = Fraction(order)
    # Each eta factor is a unit times q^(scale/24); pad for negative powers.
    pad = order + abs(power) * Fraction(scale, 12) + 1
    base = dedekind_eta(Fraction(pad, scale) + 1).substitute_power(scale)
    return base.pow_int(power).truncate(order)


def eta_quotient(spec: list[tuple[int, int]], order: Rational) -> PuiseuxSeries:
    """Product of eta(q^scale)**power factors, truncated at ``order`` in q."""
    scales = [s for s, _ in spec]
    if len(set(scales)) != len(scales):
        raise SeriesError(f"eta quotient scales must be distinct: {scales}")
    order = Fraction(order)
    shift = sum(Fraction(s * p, 24) for s, p in spec)
    pad = order + max(Fraction(0), -shift) + 1
    result = PuiseuxSeries.one(pad)
    for scale, power in spec:
        if power:
            result = result * eta_power(scale, power, pad + 1)
    return result.truncate(order)


@lru_cache(maxsize=None)
def theta1_vderiv(order: Rational) -> PuiseuxSeries:
    """sum over half-integers r of (-1)^(r-1/2) r q^(r^2/2), real-normalized.

    Equals eta(q)^3; the two r = +-(m + 1/2) terms pair up to
    (-1)^m (2m+1) q^((2m+1)^2/8).
    """
    order = Fraction(order)
    pnum = int(order * 8)
    terms = {}
    m = 0
    while (2 * m + 1) ** 2 < pnum:
        terms[(2 * m + 1) ** 2] = Fraction((-1) ** m * (2 * m + 1))
        m += 1
    return PuiseuxSeries(8, terms, max(pnum, 1))


@lru_cache(maxsize=None)
def abc_generator(level: LevelId, which: str, order: Rational) -> PuiseuxSeries:
    """The A/B/C generator for a level, at its stored power (see abc_power).

    N2/N3/N4 return the eta-quotient expressions directly, except C at level
    N2 which is stored squared (its natural leading coefficient 2^(3/2) is
    irrational).  N1STAR returns A directly (fourth root of E4) and B, C at
    their sixth powers (E4^(3/2) +- E6)/2.
    """
    order = Fraction(order)
    if which not in ("A", "B", "C"):
        raise SeriesError(f"generator must be A, B or C, got {which!r}")
    pad = order + 4
    if level is LevelId.N1STAR:
        n = int(pad) + 1
        e4 = eisenstein(4, n)
        if which == "A":
            return e4.nth_root(4).truncate(order)
        e4_32 = e4.nth_root(2).pow_int(3)
        e6 = eisenstein(6, n)
        if which == "B":
            return ((e4_32 + e6) / 2).truncate(order)
        return ((e4_32 - e6) / 2).truncate(order)
    if level is LevelId.N2:
        if which == "A":
            num = eta_power(2, 24, pad).scale(64) + eta_power(1, 24, pad)
            return (
                num.nth_root(4) * eta_quotient([(1, -2), (2, -2)], pad)
            ).truncate(order)
        if which == "B":
            return eta_quotient([(1, 4), (2, -2)], order)
        # C stored squared: C^2 = 8 eta(q^2)^8 / eta(q)^4
        return eta_quotient([(2, 8), (1, -4)], order).scale(8)
    if level is LevelId.N3:
        if which == "A":
            num = eta_power(3, 12, pad).scale(27) + eta_power(1, 12, pad)
            return (
                num.nth_root(3) * eta_quotient([(1, -1), (3, -1)], pad)
            ).truncate(order)
        if which == "B":
            return eta_quotient([(1, 3), (3, -1)], order)
        return eta_quotient([(3, 3), (1, -1)], order).scale(3)
    if which == "A":
        return eta_quotient([(2, 10), (1, -4), (4, -4)], order)
    if which == "B":
        return eta_quotient([(1, 4), (2, -2)], order)
    return eta_quotient([(4, 4), (2, -2)], order).scale(4)


def abc_power(level: LevelId, which: str) -> int:
    """Stored power of the generator returned by abc_generator."""
    if level is LevelId.N1STAR and which in ("B", "C"):
        return 6
    if level is LevelId.N2 and which == "C":
        return 2
    return 1


def abc_at_power(level: LevelId, which: str, power: int, order: Rational) -> PuiseuxSeries:
    """The generator raised to ``power``, which must be a multiple of the stored power."""
    stored = abc_power(level, which)
    if power % stored:
        raise RootError(
            f"{which}@{level.value} is only available at powers divisible by {stored}"
        )
    base = abc_generator(level, which, Fraction(order) + 2)
    return base.pow_int(power // stored).truncate(order)


@lru_cache(maxsize=None)
def hauptmodul(level: LevelId, order: Rational) -> PuiseuxSeries:
    """alpha = C^r / A^r with r the level's root degree; alpha = kappa q + ..."""
    order = Fraction(order)
    r = LEVEL_ROOT[level]
    pad = order + 2
    num = abc_at_power(level, "C", r, pad)
    den = abc_at_power(level, "A", r, pad)
    return (num / den).truncate(order)


@lru_cache(maxsize=None)
def j_classical(order: Rational) -> PuiseuxSeries:
    """j = E4^3 / eta^24 = q^-1 + 744 + 196884 q + ..."""
    order = Fraction(order)
    n = int(order) + 3
    e4 = eisenstein(4, n)
    return (e4.pow_int(3) / eta_power(1, 24, n)).truncate(order)


_J_FAMILY = {
    # family index -> (numerator coefficients by power of z, denominator spec)
    5: ((1, 224, 256), 3, 16, 4),
    6: ((1, 216), 3, 27, 3),
    7: ((1, 192), 3, 64, 2),
    8: ((1,), 1, 432, 1),
}


def j_family(n: int, z: PuiseuxSeries) -> PuiseuxSeries:
    """The j-invariant of the E_n elliptic-curve family evaluated on a series z.

    j5 = (1+224z+256z^2)^3 / (z (1-16z)^4),   j6 = (1+216z)^3 / (z (1-27z)^3),
    j7 = (1+192z)^3 / (z (1-64z)^2),          j8 = 1 / (z (1-432z)).
    """
    if n not in _J_FAMILY:
        raise SeriesError(f"family index must be 5..8, got {n}")
    if z.is_zero():
        raise ZeroSeriesError("j_family requires a nonzero argument series")
    coeffs, npow, kappa, dpow = _J_FAMILY[n]
    one = PuiseuxSeries.one(z.precision_exponent)
    acc = one.scale(coeffs[0])
    for i, c in enumerate(coeffs[1:], start=1):
        acc = acc + z.pow_int(i).scale(c)
    num = acc.pow_int(npow)
    den = z * (one - z.scale(kappa)).pow_int(dpow)
    return num / den


def hyp2f1(a: Rational, b: Rational, c: Rational, order: int) -> PuiseuxSeries:
    """Truncated 2F1(a, b; c; x) = sum (a)_k (b)_k / ((c)_k k!) x^k."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if c.denominator == 1 and c <= 0:
        raise SeriesError(f"2F1 parameter c must not be a nonpositive integer, got {c}")
    terms = {}
    coeff = Fraction(1)
    for k in range(order):
        if coeff:
            terms[k] = coeff
        coeff = coeff * (a + k) * (b + k) / ((c + k) * (k + 1))
    return PuiseuxSeries(1, terms, order)


def regular_period(level: LevelId, order: Rational) -> PuiseuxSeries:
    """2F1(1/r, 1-1/r; 1; alpha(q)) for N2/N3/N4; equals the A generator."""
    if level is LevelId.N1STAR:
        raise SeriesError("regular_period is defined for levels N2, N3, N4")
    order = Fraction(order)
    r = LEVEL_ROOT[level]
    outer = hyp2f1(Fraction(1, r), 1 - Fraction(1, r), 1, int(order) + 1)
    alpha = hauptmodul(level, order + 1)
    return outer.compose(alpha).truncate(order)
