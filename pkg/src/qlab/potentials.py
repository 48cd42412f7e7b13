"""Coefficient series of the four superpotentials, by direct truncated
summation of their defining multi-index sums, plus assembly into polynomial
form.

All series here are native to the disc variable q_d; the Kahler variable is
q = q_d**e with the cover exponent e = 24, 32, 48, 8 for the (3,3,3),
(2,4,4), (2,3,6) and (2,2,2,2) orbifolds respectively.  Enumeration bounds
follow from monotonicity of each exponent formula in every index.

For the (2,2,2,2) case the two defining sums are assigned so that every
closed-form identity they satisfy (eta-product expressions, the plus/minus
combinations, the coefficient-ratio map) holds verbatim: phi, the coefficient
of the four squared monomials, is the q_d^3 + ... series and psi, the
coefficient of xyzw, is the q_d + ... series.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache

from .poly import Poly
from .series import PuiseuxSeries, Rational


class OrbifoldId(enum.Enum):
    P333 = "333"
    P244 = "244"
    P236 = "236"
    P2222 = "2222"

    @property
    def cover_exponent(self) -> int:
        """e with q = q_d**e."""
        return {"333": 24, "244": 32, "236": 48, "2222": 8}[self.value]

    @property
    def variables(self) -> tuple[str, ...]:
        return ("x", "y", "z", "w") if self is OrbifoldId.P2222 else ("x", "y", "z")


def _series(terms: dict[int, Fraction], order: int) -> PuiseuxSeries:
    return PuiseuxSeries(1, {k: v for k, v in terms.items() if v and k < order}, order)


def _bump(terms: dict[int, Fraction], e: int, c) -> None:
    terms[e] = terms.get(e, Fraction(0)) + Fraction(c)


# ----------------------------------------------------------------------
# (3,3,3)
# ----------------------------------------------------------------------
@lru_cache(maxsize=None)
def phi_333(order_qd: int) -> PuiseuxSeries:
    """sum (-1)^(k+1) (2k+1) q_d^(9(2k+1)^2); the x^3/y^3/z^3 coefficient."""
    terms: dict[int, Fraction] = {}
    k = 0
    while 9 * (2 * k + 1) ** 2 < order_qd:
        _bump(terms, 9 * (2 * k + 1) ** 2, (-1) ** (k + 1) * (2 * k + 1))
        k += 1
    return _series(terms, order_qd)


@lru_cache(maxsize=None)
def psi_333(order_qd: int) -> PuiseuxSeries:
    """-q_d + sum over k >= 1 of (-1)^(k+1)(6k+1) q_d^((6k+1)^2) + (-1)^k (6k-1) q_d^((6k-1)^2)."""
    terms: dict[int, Fraction] = {}
    if order_qd > 1:
        _bump(terms, 1, -1)
    k = 1
    while (6 * k - 1) ** 2 < order_qd:
        if (6 * k + 1) ** 2 < order_qd:
            _bump(terms, (6 * k + 1) ** 2, (-1) ** (k + 1) * (6 * k + 1))
        _bump(terms, (6 * k - 1) ** 2, (-1) ** k * (6 * k - 1))
        k += 1
    return _series(terms, order_qd)


# ----------------------------------------------------------------------
# (2,4,4)
# ----------------------------------------------------------------------
@lru_cache(maxsize=None)
def dy_244(order_qd: int) -> PuiseuxSeries:
    """Quartic coefficient d_y = d_z for (2,4,4)."""
    terms: dict[int, Fraction] = {}
    r = 0
    while 16 * (2 * r + 1) ** 2 - 4 < order_qd:
        _bump(terms, 16 * (2 * r + 1) ** 2 - 4, 2 * r + 1)
        r += 1
    r = 0
    while 16 * (2 * r + 1) * (2 * r + 3) - 4 < order_qd:
        s = r + 1
        while 16 * (2 * r + 1) * (2 * s + 1) - 4 < order_qd:
            _bump(terms, 16 * (2 * r + 1) * (2 * s + 1) - 4, 2 * r + 2 * s + 2)
            s += 1
        r += 1
    return _series(terms, order_qd)


@lru_cache(maxsize=None)
def dyz_244(order_qd: int) -> PuiseuxSeries:
    """Mixed coefficient d_yz for (2,4,4)."""
    terms: dict[int, Fraction] = {}
    r = 1
    while 16 * (2 * r - 1) * 2 - 4 < order_qd:
        s = 1
        while 16 * (2 * r - 1) * 2 * s - 4 < order_qd:
            _bump(terms, 16 * (2 * r - 1) * 2 * s - 4, -(4 * r + 4 * s - 2))
            s += 1
        r += 1
    r = 1
    while 64 * r - 4 < order_qd:
        s = 1
        while 64 * r * s - 4 < order_qd:
            _bump(terms, 64 * r * s - 4, 2 * r + 2 * s)
            s += 1
        r += 1
    return _series(terms, order_qd)


# ----------------------------------------------------------------------
# (2,3,6)
# ----------------------------------------------------------------------
def comb2(m: int) -> int:
    """m(m-1)/2 for any integer m, so the exponent formula below is total."""
    return m * (m - 1) // 2


def hexagon_exponent(n: int, a: int, b: int, c: int) -> int:
    """C(n+2,2) - C(a+1,2) - C(b+1,2) - C(c+1,2)."""
    return comb2(n + 2) - comb2(a + 1) - comb2(b + 1) - comb2(c + 1)


def _corner_pair(a: int, b: int, c: int) -> bool:
    # Index-set condition shared by the top two strata of the z^6 sum.
    return (a < b and a < c) or (a == c and a < b)


def hexagon_stratum(n: int, a: int, b: int, c: int) -> int | None:
    """Symmetry weight (6, 3, 2 or 1) of an index tuple of the z^6 sum,
    or None when the tuple is not enumerated."""
    if n < a + b + c:
        return None
    if a == b == c:
        if n == 3 * a:
            return 6
        return 3
    if not _corner_pair(a, b, c):
        return None
    return 2 if n == a + b + c else 1


@lru_cache(maxsize=None)
def cy_236(order_qd: int) -> PuiseuxSeries:
    """y^3 coefficient: sum (-1)^(a+1) (2a+1) q_d^(24a(a+1)+9)."""
    terms: dict[int, Fraction] = {}
    a = 0
    while 24 * a * (a + 1) + 9 < order_qd:
        _bump(terms, 24 * a * (a + 1) + 9, (-1) ** (a + 1) * (2 * a + 1))
        a += 1
    return _series(terms, order_qd)


@lru_cache(maxsize=None)
def cyz2_236(order_qd: int) -> PuiseuxSeries:
    """y^2 z^2 coefficient (triangle part plus parallelogram part)."""
    terms: dict[int, Fraction] = {}
    a = 0
    while 48 * hexagon_exponent(a, a, 0, 0) - 4 < order_qd:
        n = a
        while 48 * hexagon_exponent(n, a, 0, 0) - 4 < order_qd:
            _bump(
                terms,
                48 * hexagon_exponent(n, a, 0, 0) - 4,
                (-1) ** (n - a) * (6 * n - 2 * a + 8),
            )
            n += 1
        a += 1
    for e, c in _parallelogram_terms(order_qd).items():
        _bump(terms, e, c)
    return _series(terms, order_qd)


def _parallelogram_terms(order_qd: int) -> dict[int, Fraction]:
    # second part of the y^2 z^2 sum: (2n+4) q_d^(48 (a+1)(n-a+1) - 4)
    terms: dict[int, Fraction] = {}
    a = 0
    while 48 * (a + 1) - 4 < order_qd:
        b = 0
        while 48 * (a + 1) * (b + 1) - 4 < order_qd:
            _bump(terms, 48 * (a + 1) * (b + 1) - 4, 2 * (a + b) + 4)
            b += 1
        a += 1
    return terms


@lru_cache(maxsize=None)
def cyz2_parallelogram_236(order_qd: int) -> PuiseuxSeries:
    """Just the parallelogram part of the y^2 z^2 coefficient."""
    return _series(_parallelogram_terms(order_qd), order_qd)


@lru_cache(maxsize=None)
def cyz4_236(order_qd: int) -> PuiseuxSeries:
    """y z^4 coefficient."""
    terms: dict[int, Fraction] = {}
    a = 0
    while 48 * (a + 1) - 17 < order_qd:
        b = 0
        while 48 * (a + 1) * (b + 1) - 17 < order_qd:
            n = a + b
            while 48 * hexagon_exponent(n, a, b, 0) - 17 < order_qd:
                _bump(
                    terms,
                    48 * hexagon_exponent(n, a, b, 0) - 17,
                    (-1) ** (n - a - b) * (6 * n - 2 * a - 2 * b + 7),
                )
                n += 1
            b += 1
        a += 1
    return _series(terms, order_qd)


@lru_cache(maxsize=None)
def cz_236(order_qd: int) -> PuiseuxSeries:
    """z^6 coefficient, summed over the four index strata.

    The strata are: (3a,a,a,a) weighted 1/6; (n,a,a,a) with n > 3a weighted
    1/3; (a+b+c,a,b,c) with a < min(b,c) or a = c < b weighted 1/2; and the
    same corner condition with n > a+b+c at weight 1.  Membership is exactly
    the corner condition for the last two strata: the n > a+b+c stratum
    includes tuples with repeated corners (restricting it to pairwise
    distinct corners changes the q^4 and q^5 coefficients of the coordinate
    ring normalization and breaks its closed form).
    """
    terms: dict[int, Fraction] = {}

    def put(n, a, b, c, denom) -> bool:
        e = 48 * hexagon_exponent(n, a, b, c) - 30
        if e >= order_qd:
            return False
        w = Fraction((-1) ** (n - a - b - c) * (6 * n - 2 * a - 2 * b - 2 * c + 6), denom)
        _bump(terms, e, w)
        return True

    a = 0
    while put(3 * a, a, a, a, 6):
        a += 1
    a = 0
    while 48 * hexagon_exponent(3 * a + 1, a, a, a) - 30 < order_qd:
        n = 3 * a + 1
        while put(n, a, a, a, 3):
            n += 1
        a += 1
    # Corner-condition strata.  For b > a the condition holds iff c >= a, and
    # hexagon_exponent(a+b+c,a,b,c) = ab+ac+bc+a+b+c+1 is increasing in each
    # index, so every loop may stop at its first overflow.
    a = 0
    while 48 * (3 * a * a + 5 * a + 2) - 30 < order_qd:
        b = a + 1
        while 48 * (2 * a * b + a * a + 2 * a + b + 1) - 30 < order_qd:
            c = a
            while 48 * (a * b + a * c + b * c + a + b + c + 1) - 30 < order_qd:
                assert _corner_pair(a, b, c)
                n = a + b + c
                put(n, a, b, c, 2)
                n += 1
                while put(n, a, b, c, 1):
                    n += 1
                c += 1
            b += 1
        a += 1
    return _series(terms, order_qd)


# ----------------------------------------------------------------------
# (2,2,2,2)
# ----------------------------------------------------------------------
@lru_cache(maxsize=None)
def phi_2222(order_qd: int) -> PuiseuxSeries:
    """Coefficient of the squared monomials: sum (k+l+1) q_d^((4k+1)(4l+3))."""
    terms: dict[int, Fraction] = {}
    k = 0
    while (4 * k + 1) * 3 < order_qd:
        l = 0
        while (4 * k + 1) * (4 * l + 3) < order_qd:
            _bump(terms, (4 * k + 1) * (4 * l + 3), k + l + 1)
            l += 1
        k += 1
    return _series(terms, order_qd)


@lru_cache(maxsize=None)
def psi_2222(order_qd: int) -> PuiseuxSeries:
    """xyzw coefficient: sum (4k+1) q_d^((4k+1)(4l+1)) + (4k+3) q_d^((4k+3)(4l+3))."""
    terms: dict[int, Fraction] = {}
    k = 0
    while 4 * k + 1 < order_qd:
        l = 0
        while (4 * k + 1) * (4 * l + 1) < order_qd:
            _bump(terms, (4 * k + 1) * (4 * l + 1), 4 * k + 1)
            l += 1
        k += 1
    k = 0
    while (4 * k + 3) * 3 < order_qd:
        l = 0
        while (4 * k + 3) * (4 * l + 3) < order_qd:
            _bump(terms, (4 * k + 3) * (4 * l + 3), 4 * k + 3)
            l += 1
        k += 1
    return _series(terms, order_qd)


# ----------------------------------------------------------------------
# assembly
# ----------------------------------------------------------------------
def _mono(c: Rational, e: int, order: int) -> PuiseuxSeries:
    return PuiseuxSeries(1, {e: Fraction(c)}, order)


@lru_cache(maxsize=None)
def assemble_potential(orb: OrbifoldId, order_qd: int) -> Poly:
    """The full potential as a polynomial with q_d-series coefficients."""
    v = orb.variables
    if orb is OrbifoldId.P333:
        phi, psi = phi_333(order_qd), psi_333(order_qd)
        return Poly.from_monomials(
            v, {"x^3": phi, "y^3": phi, "z^3": phi, "x y z": -psi}
        )
    if orb is OrbifoldId.P244:
        dy = dy_244(order_qd)
        return Poly.from_monomials(
            v,
            {
                "x^2": _mono(1, 6, order_qd),
                "x y z": _mono(-1, 1, order_qd),
                "y^4": dy,
                "z^4": dy,
                "y^2 z^2": dyz_244(order_qd),
            },
        )
    if orb is OrbifoldId.P236:
        return Poly.from_monomials(
            v,
            {
                "x^2": _mono(1, 6, order_qd),
                "x y z": _mono(-1, 1, order_qd),
                "y^3": cy_236(order_qd),
                "z^6": cz_236(order_qd),
                "y^2 z^2": cyz2_236(order_qd),
                "y z^4": cyz4_236(order_qd),
            },
        )
    phi, psi = phi_2222(order_qd), psi_2222(order_qd)
    return Poly.from_monomials(
        v,
        {
            "x^2 y^2": phi,
            "x^2 w^2": phi,
            "z^2 y^2": phi,
            "z^2 w^2": phi,
            "x y z w": psi,
        },
    )
