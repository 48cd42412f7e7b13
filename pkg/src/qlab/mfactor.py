"""Matrix factorizations of the potentials on the exterior algebra of C^3.

delta = (x X + y Y + z Z) wedge . + w_x i_X + w_y i_Y + w_z i_Z acts on the
eight-dimensional exterior algebra; its square must be the potential times
the identity.  The basis is ordered by grade then bitmask: (), X, Y, Z, XY,
XZ, YZ, XYZ, with wedge/contraction signs from the generator order X < Y < Z.
The w-polynomials are computed by direct truncated summation of their
defining sums; their closed forms are verified elsewhere.
"""
from __future__ import annotations

from fractions import Fraction

from .poly import Poly
from .report import IdentityReport, mismatch_dict, report_from_comparison
from .potentials import (
    OrbifoldId,
    _bump,
    _series,
    assemble_potential,
    cy_236,
    cz_236,
    dy_244,
    hexagon_exponent,
    phi_333,
)
from .series import PuiseuxSeries

#: basis masks in grade order; bit 0 = X, bit 1 = Y, bit 2 = Z
BASIS_MASKS = (0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111)
BASIS_NAMES = ("1", "X", "Y", "Z", "XY", "XZ", "YZ", "XYZ")
_INDEX_OF_MASK = {m: i for i, m in enumerate(BASIS_MASKS)}


def _wedge_sign(mask: int, gen: int) -> int:
    """Sign of e_gen wedge e_mask, i.e. (-1)^(number of earlier generators in mask)."""
    count = bin(mask & ((1 << gen) - 1)).count("1")
    return -1 if count % 2 else 1


# ----------------------------------------------------------------------
# w-polynomials
# ----------------------------------------------------------------------
def _xz_series_333(order_qd: int) -> PuiseuxSeries:
    # sum over k >= 1 of (-1)^(k+1) 2k (q_d^((6k+1)^2) - q_d^((6k-1)^2))
    terms: dict[int, Fraction] = {}
    k = 1
    while (6 * k - 1) ** 2 < order_qd:
        if (6 * k + 1) ** 2 < order_qd:
            _bump(terms, (6 * k + 1) ** 2, (-1) ** (k + 1) * 2 * k)
        _bump(terms, (6 * k - 1) ** 2, -((-1) ** (k + 1)) * 2 * k)
        k += 1
    return _series(terms, order_qd)


def _yz_series_333(order_qd: int) -> PuiseuxSeries:
    # -q_d + sum over k >= 1 of (-1)^(k+1) ((2k+1) q_d^((6k+1)^2) - (2k-1) q_d^((6k-1)^2))
    terms: dict[int, Fraction] = {}
    if order_qd > 1:
        _bump(terms, 1, -1)
    k = 1
    while (6 * k - 1) ** 2 < order_qd:
        if (6 * k + 1) ** 2 < order_qd:
            _bump(terms, (6 * k + 1) ** 2, (-1) ** (k + 1) * (2 * k + 1))
        _bump(terms, (6 * k - 1) ** 2, -((-1) ** (k + 1)) * (2 * k - 1))
        k += 1
    return _series(terms, order_qd)


def _mixed_sums_244(order_qd: int, first_index: bool) -> PuiseuxSeries:
    # sum (-(2r+2s-1) q_d^(16(2r-1)2s-4) + 2r q_d^(64rs-4)); the second weight
    # is 2r for the y z^2 coefficient and 2s for the y^2 z coefficient.
    terms: dict[int, Fraction] = {}
    r = 1
    while 32 * (2 * r - 1) - 4 < order_qd:
        s = 1
        while 16 * (2 * r - 1) * 2 * s - 4 < order_qd:
            _bump(terms, 16 * (2 * r - 1) * 2 * s - 4, -(2 * r + 2 * s - 1))
            s += 1
        r += 1
    r = 1
    while 64 * r - 4 < order_qd:
        s = 1
        while 64 * r * s - 4 < order_qd:
            _bump(terms, 64 * r * s - 4, 2 * r if first_index else 2 * s)
            s += 1
        r += 1
    return _series(terms, order_qd)


def _pair_sums_236(order_qd: int, for_y: bool) -> PuiseuxSeries:
    # y z^2 part of w_y: (-1)^b (2a+4b+5) q^(48 A(a+b,a,0,0)-4) + (2b+2) q^(48 A(a+b,a,b,0)-4)
    # y^2 z part of w_z: (-1)^b (2a+2b+3) q^(...)               + (2a+2) q^(...)
    terms: dict[int, Fraction] = {}
    a = 0
    while 48 * hexagon_exponent(a, a, 0, 0) - 4 < order_qd:
        b = 0
        while 48 * hexagon_exponent(a + b, a, 0, 0) - 4 < order_qd:
            w = (2 * a + 4 * b + 5) if for_y else (2 * a + 2 * b + 3)
            _bump(terms, 48 * hexagon_exponent(a + b, a, 0, 0) - 4, (-1) ** b * w)
            b += 1
        a += 1
    a = 0
    while 48 * (a + 1) - 4 < order_qd:
        b = 0
        while 48 * (a + 1) * (b + 1) - 4 < order_qd:
            w = (2 * b + 2) if for_y else (2 * a + 2)
            _bump(terms, 48 * (a + 1) * (b + 1) - 4, w)
            b += 1
        a += 1
    return _series(terms, order_qd)


def _tail_sums_236(order_qd: int, for_y: bool) -> PuiseuxSeries:
    # z^4 part of w_y: (-1)^(n-a-b) (2n-2a+2) q^(48 A(n,a,b,0)-17)
    # y z^3 part of w_z: (-1)^(n-a-b) (4n-2b+5) q^(...)
    terms: dict[int, Fraction] = {}
    a = 0
    while 48 * (a + 1) - 17 < order_qd:
        b = 0
        while 48 * (a + 1) * (b + 1) - 17 < order_qd:
            n = a + b
            while 48 * hexagon_exponent(n, a, b, 0) - 17 < order_qd:
                w = (2 * n - 2 * a + 2) if for_y else (4 * n - 2 * b + 5)
                _bump(
                    terms,
                    48 * hexagon_exponent(n, a, b, 0) - 17,
                    (-1) ** (n - a - b) * w,
                )
                n += 1
            b += 1
        a += 1
    return _series(terms, order_qd)


def mf_coefficients(orb: OrbifoldId, order_qd: int) -> dict[str, Poly]:
    """The three w-polynomials whose wedge-contraction operator squares to W."""
    v = ("x", "y", "z")

    def mono(c, e):
        return PuiseuxSeries(1, {e: Fraction(c)}, order_qd)

    if orb is OrbifoldId.P333:
        s1 = phi_333(order_qd)
        syz = _yz_series_333(order_qd)
        sxz = _xz_series_333(order_qd)
        return {
            "w_x": Poly.from_monomials(v, {"x^2": s1, "y z": syz}),
            "w_y": Poly.from_monomials(v, {"y^2": s1, "x z": sxz}),
            "w_z": Poly.from_monomials(v, {"z^2": s1, "x y": sxz}),
        }
    if orb is OrbifoldId.P244:
        dy = dy_244(order_qd)
        return {
            "w_x": Poly.from_monomials(v, {"x": mono(1, 6), "y z": mono(-1, 1)}),
            "w_y": Poly.from_monomials(
                v, {"y^3": dy, "y z^2": _mixed_sums_244(order_qd, True)}
            ),
            "w_z": Poly.from_monomials(
                v, {"z^3": dy, "y^2 z": _mixed_sums_244(order_qd, False)}
            ),
        }
    if orb is OrbifoldId.P236:
        return {
            "w_x": Poly.from_monomials(v, {"x": mono(1, 6), "y z": mono(-1, 1)}),
            "w_y": Poly.from_monomials(
                v,
                {
                    "y^2": cy_236(order_qd),
                    "y z^2": _pair_sums_236(order_qd, True),
                    "z^4": _tail_sums_236(order_qd, True),
                },
            ),
            "w_z": Poly.from_monomials(
                v,
                {
                    "z^5": cz_236(order_qd),
                    "y^2 z": _pair_sums_236(order_qd, False),
                    "y z^3": _tail_sums_236(order_qd, False),
                },
            ),
        }
    raise ValueError(f"no matrix factorization data for {orb}")


# ----------------------------------------------------------------------
# the odd operator and its square
# ----------------------------------------------------------------------
class ExtMatrix:
    """8x8 matrix of polynomials over the exterior-algebra basis."""

    __slots__ = ("entries",)

    def __init__(self, entries: list[list[Poly | None]]):
        self.entries = entries

    def entry(self, row_mask: int, col_mask: int) -> Poly | None:
        """Component mapping basis vector e_col into e_row."""
        return self.entries[_INDEX_OF_MASK[row_mask]][_INDEX_OF_MASK[col_mask]]

    def square(self) -> "ExtMatrix":
        n = 8
        out: list[list[Poly | None]] = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc: Poly | None = None
                for k in range(n):
                    a = self.entries[i][k]
                    b = self.entries[k][j]
                    if a is None or b is None:
                        continue
                    prod = a * b
                    acc = prod if acc is None else acc + prod
                out[i][j] = acc
        return ExtMatrix(out)

    def to_json_dict(self) -> dict:
        return {
            "basis": list(BASIS_NAMES),
            "entries": [
                [None if e is None or e.is_zero() else e.to_json_dict() for e in row]
                for row in self.entries
            ],
        }


def verify_clifford(orb: OrbifoldId, order_qd: int) -> "IdentityReport":
    """Check x w_x + y w_y + z w_z = W coefficient by coefficient."""
    ws = mf_coefficients(orb, order_qd)
    one = PuiseuxSeries.one(order_qd)
    lhs = (
        ws["w_x"].var_multiple("x", one)
        + ws["w_y"].var_multiple("y", one)
        + ws["w_z"].var_multiple("z", one)
    )
    rhs = assemble_potential(orb, order_qd)
    cmp = lhs.equal_to_order(rhs)
    return report_from_comparison(f"clifford@{orb.value}", cmp)


def verify_square(orb: OrbifoldId, order_qd: int) -> "IdentityReport":
    """Check delta^2 = W * Id on all 64 entries."""
    squared = delta_matrix(orb, order_qd).square()
    w = assemble_potential(orb, order_qd)
    zero = Poly(("x", "y", "z"))
    worst = Fraction(order_qd)
    for i in range(8):
        for j in range(8):
            got = squared.entries[i][j] or zero
            want = w if i == j else zero
            cmp = got.equal_to_order(want, order_qd)
            if not cmp.ok:
                detail = mismatch_dict(cmp.mismatch)
                detail["entry"] = f"{BASIS_NAMES[i]}<-{BASIS_NAMES[j]}"
                return IdentityReport(
                    f"square@{orb.value}", cmp.verified_to, "mismatch", detail
                )
            worst = min(worst, cmp.verified_to)
    return IdentityReport(f"square@{orb.value}", worst, "ok")


#: the two candidate eta expressions for the mixed coefficients of the
#: (3,3,3) factorization; only the b-variants match the defining sums.
CLOSED_FORM_333_VARIANTS = {
    "yz_a": ((-Fraction(1, 3), Fraction(1)), -Fraction(2, 3)),
    "yz_b": ((-Fraction(1, 3), Fraction(-1)), -Fraction(2, 3)),
    "xz_a": ((-Fraction(1, 3), Fraction(1)), Fraction(1, 3)),
    "xz_b": ((-Fraction(1, 3), Fraction(-1)), Fraction(1, 3)),
}


def closed_forms_333(order_q: int) -> "IdentityReport":
    """Verify the eta closed forms of the (3,3,3) factorization coefficients.

    The x^2 coefficient must equal -eta(q^3)^3.  For each mixed coefficient
    two candidate closed forms c1*eta(q^(1/3))^3 + c2*eta(q^3)^3 + c3*eta(q)
    differing in the sign of the eta(q^3)^3 term are compared; the report
    notes which variant matches and where the other one first fails.
    """
    from .classical import dedekind_eta, eta_power

    ws = mf_coefficients(OrbifoldId.P333, 24 * order_q)

    def in_q(series: PuiseuxSeries) -> PuiseuxSeries:
        return series.substitute_power(Fraction(1, 24))

    eta3_cubed = eta_power(3, 3, order_q)
    eta_third_cubed = (
        dedekind_eta(3 * order_q + 1).substitute_power(Fraction(1, 3)).pow_int(3)
    )
    eta_plain = dedekind_eta(order_q)

    x2 = in_q(ws["w_x"].coefficient((2, 0, 0)))
    cmp = x2.equal_to_order(-eta3_cubed)
    if not cmp.ok:
        return report_from_comparison("mf-closed-forms@333", cmp, note="x^2 coefficient")

    notes = []
    verified = cmp.verified_to
    checks = [
        ("yz", in_q(ws["w_x"].coefficient((0, 1, 1)))),
        ("xz", in_q(ws["w_y"].coefficient((1, 0, 1)))),
    ]
    for label, series in checks:
        results = {}
        for variant in ("a", "b"):
            (c13, c3), c1 = CLOSED_FORM_333_VARIANTS[f"{label}_{variant}"]
            target = (
                eta_third_cubed.scale(c13) + eta3_cubed.scale(c3) + eta_plain.scale(c1)
            )
            results[variant] = series.equal_to_order(target)
        good, bad = results["b"], results["a"]
        if not good.ok:
            return report_from_comparison(
                "mf-closed-forms@333", good, note=f"{label} coefficient"
            )
        verified = min(verified, good.verified_to)
        if bad.ok:
            notes.append(f"{label}: both sign variants match (unexpected)")
        else:
            notes.append(
                f"{label}: matches with -eta(q^3)^3; the +eta(q^3)^3 variant "
                f"first differs at q^{bad.mismatch.exponent}"
            )
    return IdentityReport("mf-closed-forms@333", verified, "ok", note="; ".join(notes))


def series_236_extras(order_q: int):
    """The six auxiliary q-series of the (2,3,6) factorization plus the
    identity report tying the third one to (1 - E_2)/24.

    All exponents come out integral: (b+1) and (b+2a+2) have opposite parity,
    so the half in the exponent formula always cancels.
    """
    from .classical import eisenstein

    def sum_ab(weight) -> PuiseuxSeries:
        # sum over a, b >= 0 with exponent (b+1)(b+2a+2)/2, signed by (-1)^b
        terms: dict[int, Fraction] = {}
        pnum = 2 * order_q
        b = 0
        while (b + 1) * (b + 2) < pnum:
            a = 0
            while (e := (b + 1) * (b + 2 * a + 2)) < pnum:
                _bump(terms, e, (-1) ** b * weight(a, b))
                a += 1
            b += 1
        return PuiseuxSeries(2, terms, pnum)

    s2361 = sum_ab(lambda a, b: 4 * b + 2 * a + 5)
    s2362 = sum_ab(lambda a, b: 2 * b + 2 * a + 3)
    s2363 = sum_ab(lambda a, b: 2 * a + 1)
    s2364 = sum_ab(lambda a, b: b + 1)

    def sum_kab(weight) -> PuiseuxSeries:
        # exponent (1+a)(1+b) + k(a+b) + k(k+3)/2, increasing in k, a and b
        terms: dict[int, Fraction] = {}
        k = 0
        while 1 + k * (k + 3) // 2 < order_q:
            base = k * (k + 3) // 2
            a = 0
            while (1 + a) + k * a + base < order_q:
                b = 0
                while (e := (1 + a) * (1 + b) + k * (a + b) + base) < order_q:
                    _bump(terms, e, (-1) ** k * weight(k, a, b))
                    b += 1
                a += 1
            k += 1
        return PuiseuxSeries(1, terms, order_q)

    s2365 = sum_kab(lambda k, a, b: 2 * a + 1)
    s2366 = sum_kab(lambda k, a, b: 2 * k + 1)

    target = (PuiseuxSeries.one(order_q) - eisenstein(2, order_q)).scale(Fraction(1, 24))
    report = report_from_comparison("eq2363", s2363.equal_to_order(target))
    return {
        "s2361": s2361,
        "s2362": s2362,
        "s2363": s2363,
        "s2364": s2364,
        "s2365": s2365,
        "s2366": s2366,
    }, report


def eq2364_lambert_form(order_q: int) -> PuiseuxSeries:
    """sum (-1)^(k-1) k q^((k^2+k)/2) / (1 - q^k), expanded geometrically."""
    terms: dict[int, Fraction] = {}
    k = 1
    while k * (k + 1) // 2 < order_q:
        e = k * (k + 1) // 2
        while e < order_q:
            _bump(terms, e, (-1) ** (k - 1) * k)
            e += k
        k += 1
    return PuiseuxSeries(1, terms, order_q)


def delta_matrix(orb: OrbifoldId, order_qd: int) -> ExtMatrix:
    """Wedge by (x X + y Y + z Z) plus contraction against the w-polynomials."""
    ws = mf_coefficients(orb, order_qd)
    v = ("x", "y", "z")
    one = PuiseuxSeries.one(order_qd)
    var_polys = [
        Poly.from_monomials(v, {"x": one}),
        Poly.from_monomials(v, {"y": one}),
        Poly.from_monomials(v, {"z": one}),
    ]
    w_polys = [ws["w_x"], ws["w_y"], ws["w_z"]]
    entries: list[list[Poly | None]] = [[None] * 8 for _ in range(8)]
    for col in BASIS_MASKS:
        j = _INDEX_OF_MASK[col]
        for gen in range(3):
            bit = 1 << gen
            sign = _wedge_sign(col, gen)
            if not col & bit:  # wedge: e_gen ^ e_col
                row = col | bit
                term = var_polys[gen] if sign > 0 else -var_polys[gen]
            else:  # contraction i_gen e_col
                row = col & ~bit
                term = w_polys[gen] if sign > 0 else -w_polys[gen]
            i = _INDEX_OF_MASK[row]
            entries[i][j] = term if entries[i][j] is None else entries[i][j] + term
    return ExtMatrix(entries)
