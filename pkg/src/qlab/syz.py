"""Coefficient-ratio maps from the potentials, the modular-function targets
they must equal, the j-invariant consistency check for the four-point case,
and the local P2 open-invariant pipeline.

The (2,3,6) map carries an irrational scalar at power one, so it is built
and compared cubed; everything stays in Q.  For that case the exponent
pattern printed for the Eisenstein-quotient target is inconsistent with the
six printed normalization coefficients; the derivation-backed target is
-27 E4^3 / (4 E6^2), and the check reports where the other exponent pattern
first fails instead of asserting it.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .classical import (
    LevelId,
    abc_at_power,
    abc_generator,
    eisenstein,
    eta_power,
    hauptmodul,
    j_classical,
)
from .potentials import (
    OrbifoldId,
    cy_236,
    cyz2_236,
    cyz4_236,
    cz_236,
    dy_244,
    dyz_244,
    phi_333,
    phi_2222,
    psi_333,
    psi_2222,
)
from .report import IdentityReport, report_from_comparison
from .series import PuiseuxSeries


def syz_declared_power(orb: OrbifoldId) -> int:
    """Power at which the map is represented: 3 for (2,3,6), else 1."""
    return 3 if orb is OrbifoldId.P236 else 1


@lru_cache(maxsize=None)
def syz_map_qd(orb: OrbifoldId, order_qd: int) -> PuiseuxSeries:
    """The coefficient-ratio map as a Laurent series in q_d.

    (3,3,3) and (2,2,2,2): psi/phi.  (2,4,4): (d_yz - 1/(4 q_d^4)) / d_y.
    (2,3,6): the cube of the normalization factor, assembled so that all
    fractional powers cancel: sigma^3 = X^3 / (c_y Y^2).
    """
    pad = order_qd + 64

    def mono(c, e, p=None):
        return PuiseuxSeries(1, {e: Fraction(c)}, p or pad)

    if orb is OrbifoldId.P333:
        return (psi_333(pad + 16) / phi_333(pad + 16)).truncate(order_qd)
    if orb is OrbifoldId.P244:
        dy = dy_244(pad + 24)
        dyz = dyz_244(pad + 24)
        return ((dyz - mono(Fraction(1, 4), -4, pad + 24)) / dy).truncate(order_qd)
    if orb is OrbifoldId.P2222:
        return (psi_2222(pad + 6) / phi_2222(pad + 6)).truncate(order_qd)
    # (2,3,6): pad past the two inversions of c_y (ord 9) and Y (ord -30)
    pw = order_qd + 160
    cy, cyz2, cyz4, cz = cy_236(pw), cyz2_236(pw), cyz4_236(pw), cz_236(pw)
    cy_inv = cy.invert()
    x = (
        cyz4
        - cyz2 * cyz2 * cy_inv.scale(Fraction(1, 3))
        - mono(Fraction(1, 48), -8, pw) * cy_inv
        + cyz2 * cy_inv * mono(Fraction(1, 6), -4, pw)
    )
    cy2_inv = cy_inv * cy_inv
    y = (
        cz
        + cyz2.pow_int(3) * cy2_inv.scale(Fraction(2, 27))
        - cyz2 * cyz4 * cy_inv.scale(Fraction(1, 3))
        - mono(Fraction(1, 864), -12, pw) * cy2_inv
        + cyz2 * cy2_inv * mono(Fraction(1, 72), -8, pw)
        - cyz2 * cyz2 * cy2_inv * mono(Fraction(1, 18), -4, pw)
        + cyz4 * cy_inv * mono(Fraction(1, 12), -4, pw)
    )
    sigma_cubed = x.pow_int(3) / (cy * y * y)
    return sigma_cubed.truncate(order_qd)


def syz_map(orb: OrbifoldId, order_q) -> PuiseuxSeries:
    """The map of syz_map_qd rewritten in the Kahler variable q."""
    order_q = Fraction(order_q)
    e = orb.cover_exponent
    return syz_map_qd(orb, int(order_q * e) + 1).substitute_power(
        Fraction(1, e)
    ).truncate(order_q)


def inverse_mirror_target(orb: OrbifoldId, order_q) -> PuiseuxSeries:
    """The modular-function side, in q, at the declared power."""
    order_q = Fraction(order_q)
    pad = order_q + 2
    if orb is OrbifoldId.P333:
        a3 = abc_generator(LevelId.N3, "A", pad)
        c3 = abc_generator(LevelId.N3, "C", pad)
        return (a3.scale(3) / c3).truncate(order_q)
    if orb is OrbifoldId.P244:
        a2sq = abc_at_power(LevelId.N2, "A", 2, pad)
        c2sq = abc_generator(LevelId.N2, "C", pad)  # stored squared
        return (a2sq.scale(-2) / c2sq).truncate(order_q)
    if orb is OrbifoldId.P2222:
        return target_2222_eta(order_q)
    n = int(order_q) + 2
    e4, e6 = eisenstein(4, n), eisenstein(6, n)
    return (
        (e4.pow_int(3) / e6.pow_int(2)).scale(-Fraction(27, 4)).truncate(order_q)
    )


def inverse_mirror_target_alt_236(order_q) -> PuiseuxSeries:
    """The other exponent pattern, -27 E4^9 / (4 E6^6); kept for reporting."""
    order_q = Fraction(order_q)
    n = int(order_q) + 2
    e4, e6 = eisenstein(4, n), eisenstein(6, n)
    return (e4.pow_int(9) / e6.pow_int(6)).scale(-Fraction(27, 4)).truncate(order_q)


def target_2222_eta(order_q) -> PuiseuxSeries:
    """eta(q)^12 / (eta(q^2)^8 eta(q^(1/2))^4)."""
    order_q = Fraction(order_q)
    pad = order_q + 2
    num = eta_power(1, 12, pad)
    den = eta_power(2, 8, pad) * eta_power(1, 4, 2 * pad).substitute_power(
        Fraction(1, 2)
    )
    return (num / den).truncate(order_q)


def target_2222_ac(order_q) -> PuiseuxSeries:
    """4 A4(q^(1/2)) / C4(q^(1/2)); must agree with the eta form."""
    order_q = Fraction(order_q)
    pad = 2 * order_q + 2
    half = Fraction(1, 2)
    a4 = abc_generator(LevelId.N4, "A", pad).substitute_power(half)
    c4 = abc_generator(LevelId.N4, "C", pad).substitute_power(half)
    return (a4.scale(4) / c4).truncate(order_q)


def target_244_eta(order_q) -> PuiseuxSeries:
    """-2 (1 + eta(q)^24 / (64 eta(q^2)^24))^(1/2)."""
    order_q = Fraction(order_q)
    pad = order_q + 3
    ratio = eta_power(1, 24, pad) / eta_power(2, 24, pad + 2)
    inner = PuiseuxSeries.one(pad) + ratio.scale(Fraction(1, 64))
    return inner.nth_root(2).scale(-2).truncate(order_q)


def verify_syz(orb: OrbifoldId, order_q) -> IdentityReport:
    """Compare the coefficient-ratio map against its modular target.

    For (2,3,6) the comparison is at the declared power 3 and the report
    notes the first failure of the rejected exponent pattern.
    """
    name = f"syz@{orb.value}"
    lhs = syz_map(orb, order_q)
    rhs = inverse_mirror_target(orb, order_q)
    cmp = lhs.equal_to_order(rhs, order_q)
    note = None
    if orb is OrbifoldId.P236:
        alt = lhs.equal_to_order(inverse_mirror_target_alt_236(order_q), order_q)
        if alt.ok:
            note = "cubed comparison; E4^9/E6^6 pattern also matches (unexpected)"
        else:
            note = (
                "cubed comparison; target -27E4^3/(4E6^2); the -27E4^9/(4E6^6) "
                f"exponent pattern first differs at q^{alt.mismatch.exponent}"
            )
    return report_from_comparison(name, cmp, note=note)


# Printed normalization constants, exact.
SIGMA_244_COEFFS = {
    Fraction(-16, 32): Fraction(-1, 4),
    Fraction(16, 32): Fraction(-5),
    Fraction(48, 32): Fraction(31, 2),
    Fraction(80, 32): Fraction(-54),
    Fraction(112, 32): Fraction(641, 4),
    Fraction(144, 32): Fraction(-409),
    Fraction(176, 32): Fraction(1889, 2),
}
SIGMA_236_INTEGERS = [1, 576, 235008, 109880064, 53449592832, 26574124961664]
KP2_OPEN_INVARIANTS = [1, -2, 5, -32, 286, -3038, 35870]
KP2_GV_INVARIANTS = [3, -6, 27, -192, 1695]


def check_sigma_244_coefficients() -> IdentityReport:
    """The seven printed coefficients of the (2,4,4) map, exactly."""
    series = syz_map(OrbifoldId.P244, Fraction(12, 2))
    for exponent, expected in SIGMA_244_COEFFS.items():
        got = series.coefficient(exponent)
        if got != expected:
            return IdentityReport(
                "sigma-series@244",
                exponent,
                "mismatch",
                {"exponent": str(exponent), "lhs": str(got), "rhs": str(expected)},
            )
    return IdentityReport("sigma-series@244", max(SIGMA_244_COEFFS) + Fraction(1, 32), "ok")


def check_sigma_236_integers() -> IdentityReport:
    """The six printed integers of the (2,3,6) normalization, via cubes.

    sigma = -3/2^(2/3) * u with u = 1 + 576 q + ..., so sigma^3 must equal
    -27/4 * u^3.
    """
    order = len(SIGMA_236_INTEGERS)
    lhs = syz_map(OrbifoldId.P236, order)
    u = PuiseuxSeries(1, {k: Fraction(c) for k, c in enumerate(SIGMA_236_INTEGERS)}, order)
    rhs = u.pow_int(3).scale(-Fraction(27, 4)).truncate(order)
    return report_from_comparison(
        "sigma-series@236", lhs.equal_to_order(rhs, order), note="cubed comparison"
    )


def j_consistency_2222(order_q) -> IdentityReport:
    """j of the (2,2,2,2) map against the classical j-invariant.

    j(sigma) = (sigma^4 - 16 sigma^2 + 256)^3 / (sigma^4 (sigma^2 - 16)^2)
    uses only even powers, hence stays rational.  The argument power s with
    j(sigma(q)) = j(q^s) is found from the leading exponent among the
    candidates 1/2, 1, 2 and reported.
    """
    order_q = Fraction(order_q)
    e = OrbifoldId.P2222.cover_exponent
    pad_qd = int((order_q + 3) * e)
    sigma = syz_map_qd(OrbifoldId.P2222, pad_qd)
    t = sigma * sigma  # sigma^2, exponents in q_d
    t2 = t * t
    one = PuiseuxSeries.one(t.precision_exponent)
    num = (t2 - t.scale(16) + one.scale(256)).pow_int(3)
    den = t2 * (t - one.scale(16)).pow_int(2)
    j_sigma = num / den
    lead = j_sigma.order  # in q_d units
    candidates = [Fraction(1, 2), Fraction(1), Fraction(2)]
    s = next((c for c in candidates if -lead == c * e), None)
    if s is None:
        return IdentityReport(
            "j-consistency@2222",
            Fraction(0),
            "mismatch",
            {"exponent": str(Fraction(lead, e)), "lhs": "pole order", "rhs": "in {1/2,1,2}"},
        )
    j_sigma_q = j_sigma.substitute_power(Fraction(1, e))
    target = j_classical(order_q / s + 2).substitute_power(s)
    cmp = j_sigma_q.equal_to_order(target, order_q)
    return report_from_comparison(
        "j-consistency@2222", cmp, note=f"argument power s = {s}"
    )


def modular_relation_2222(order_q) -> IdentityReport:
    """Direct form of the (2,2,2,2) target: 2 (1 + alpha^(1/2)) / alpha^(1/4).

    The argument normalization of the level-4 Hauptmodul alpha is found
    empirically among q^(1/2), q, q^2 and reported.
    """
    order_q = Fraction(order_q)
    lhs = syz_map(OrbifoldId.P2222, order_q)
    for s in (Fraction(1), Fraction(1, 2), Fraction(2)):
        alpha = hauptmodul(LevelId.N4, order_q / s + 3).substitute_power(s)
        root4 = alpha.nth_root(4)
        rhs = (PuiseuxSeries.one(alpha.precision_exponent) + root4 * root4).scale(
            2
        ) / root4
        cmp = lhs.equal_to_order(rhs, order_q)
        if cmp.ok:
            return report_from_comparison(
                "modular-relation@2222", cmp, note=f"alpha taken at argument q^{s}"
            )
    return report_from_comparison(
        "modular-relation@2222", cmp, note="no candidate argument power matched"
    )


# ----------------------------------------------------------------------
# local P2
# ----------------------------------------------------------------------
def chi_minus3(n: int) -> int:
    """Dirichlet character mod 3: 0, 1, -1 on 3k, 3k+1, 3k+2."""
    return (0, 1, -1)[n % 3]


def _sign_flip(f: PuiseuxSeries) -> PuiseuxSeries:
    """f(-q) for integer-exponent series."""
    return PuiseuxSeries(
        1,
        {k: (c if k % 2 == 0 else -c) for k, c in f.numerator_items()},
        f.precision,
    )


def _character_product(order: int) -> PuiseuxSeries:
    """prod (1 - q^n)^(9 n chi(n)) truncated at ``order``."""
    result = PuiseuxSeries.one(order)
    for n in range(1, order):
        exp = 9 * n * chi_minus3(n)
        if exp:
            result = result * PuiseuxSeries(1, {0: Fraction(1), n: Fraction(-1)}, order).pow_int(exp)
            result = result.truncate(order)
    return result


def _gv_product(order: int) -> PuiseuxSeries:
    """(-q) prod (1 - q^d)^(3 d^2 n_d) over the five tabulated invariants."""
    result = PuiseuxSeries(1, {1: Fraction(-1)}, order)
    for d, nd in enumerate(KP2_GV_INVARIANTS, start=1):
        exp = 3 * d * d * nd
        result = result * PuiseuxSeries(1, {0: Fraction(1), d: Fraction(-1)}, order).pow_int(exp)
        result = result.truncate(order)
    return result


@lru_cache(maxsize=None)
def kp2_suite(order: int = 12) -> dict:
    """Run the local P2 pipeline and return its artifacts and report.

    The flat-coordinate exponential q_t is an explicit character product in
    the modular variable q_tau with leading -q_tau; the reversion conjugates
    by a sign flip to stay in revert's normal form.  The open invariants are
    the coefficients of the cube root of -27 q_t / alpha(q_tau(q_t)).
    """
    if order < 8:
        raise ValueError("kp2_suite needs order >= 8 to see the tabulated invariants")
    qt_of_qtau = PuiseuxSeries(1, {1: Fraction(-1)}, order) * _character_product(order)
    # qt = -G(q_tau) with G = q_tau * product; revert G, then negate the argument.
    g = -qt_of_qtau
    qtau_of_qt = _sign_flip(g.revert())
    gv_cmp = qtau_of_qt.equal_to_order(_gv_product(min(order, 7)), min(order, 7))
    alpha = hauptmodul(LevelId.N3, order + 1)
    alpha_at_qt = alpha.compose(qtau_of_qt)
    cubed = PuiseuxSeries(1, {1: Fraction(-27)}, order) / alpha_at_qt
    one_plus_delta = cubed.nth_root(3)
    if one_plus_delta.coefficient(0) != 1:
        raise ArithmeticError("cube root of the invariant generating function is not 1 + O(q)")
    count = min(len(KP2_OPEN_INVARIANTS), order - 1)
    n_k = [one_plus_delta.coefficient(k) for k in range(count)]
    expected = [Fraction(v) for v in KP2_OPEN_INVARIANTS[:count]]
    if not gv_cmp.ok:
        report = report_from_comparison("kp2", gv_cmp, note="flat-coordinate products not mutually inverse")
    elif n_k != expected:
        k = next(i for i, (a, b) in enumerate(zip(n_k, expected)) if a != b)
        report = IdentityReport(
            "kp2",
            Fraction(k),
            "mismatch",
            {"exponent": str(k), "lhs": str(n_k[k]), "rhs": str(expected[k])},
            note="open invariants differ",
        )
    else:
        report = IdentityReport(
            "kp2",
            Fraction(count),
            "ok",
            note=f"{count} open invariants match; product forms mutually inverse to q^{gv_cmp.verified_to}",
        )
    return {
        "qt_of_qtau": qt_of_qtau,
        "qtau_of_qt": qtau_of_qt,
        "alpha3": alpha,
        "one_plus_delta_cubed": cubed,
        "one_plus_delta": one_plus_delta,
        "n_k": n_k,
        "gv_product": _gv_product(min(order, 7)),
        "report": report,
    }
