"""Polynomials in a fixed tuple of formal variables with series coefficients.

A ``Poly`` maps integer exponent tuples to :class:`PuiseuxSeries`.  Only the
handful of ring operations needed for the potentials and matrix
factorizations is provided; everything stays exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import Comparison, PuiseuxSeries


@dataclass(frozen=True)
class PolyMismatch:
    monomial: str
    exponent: Fraction
    lhs: Fraction
    rhs: Fraction


class Poly:
    __slots__ = ("variables", "_terms")

    def __init__(
        self,
        variables: tuple[str, ...],
        terms: dict[tuple[int, ...], PuiseuxSeries] | None = None,
    ):
        object.__setattr__(self, "variables", tuple(variables))
        clean = {}
        for mono, series in (terms or {}).items():
            if len(mono) != len(self.variables):
                raise ValueError(f"monomial {mono} does not match {self.variables}")
            if not series.is_zero():
                clean[tuple(mono)] = series
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def from_monomials(
        cls,
        variables: tuple[str, ...],
        entries: dict[str, PuiseuxSeries],
    ) -> "Poly":
        """Build from names like ``"x^2 y"``; a bare ``"1"`` is the constant."""
        terms = {}
        for name, series in entries.items():
            terms[_parse_monomial(name, variables)] = series
        return cls(variables, terms)

    def monomials(self) -> list[tuple[int, ...]]:
        return sorted(self._terms)

    def coefficient(self, mono: tuple[int, ...]) -> PuiseuxSeries | None:
        return self._terms.get(tuple(mono))

    def monomial_name(self, mono: tuple[int, ...]) -> str:
        parts = []
        for var, e in zip(self.variables, mono):
            if e == 1:
                parts.append(var)
            elif e:
                parts.append(f"{var}^{e}")
        return " ".join(parts) if parts else "1"

    def is_zero(self) -> bool:
        return not self._terms

    def __repr__(self) -> str:
        names = [self.monomial_name(m) for m in self.monomials()]
        return f"Poly({'+'.join(names) or '0'} in {'/'.join(self.variables)})"

    def __add__(self, other: "Poly") -> "Poly":
        if self.variables != other.variables:
            raise ValueError("variable sets differ")
        out = dict(self._terms)
        for mono, series in other._terms.items():
            out[mono] = out[mono] + series if mono in out else series
        return Poly(self.variables, out)

    def __neg__(self) -> "Poly":
        return Poly(self.variables, {m: -s for m, s in self._terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, PuiseuxSeries):
            return Poly(
                self.variables, {m: s * other for m, s in self._terms.items()}
            )
        if not isinstance(other, Poly):
            return NotImplemented
        if self.variables != other.variables:
            raise ValueError("variable sets differ")
        out: dict[tuple[int, ...], PuiseuxSeries] = {}
        for m1, s1 in self._terms.items():
            for m2, s2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                prod = s1 * s2
                out[m] = out[m] + prod if m in out else prod
        return Poly(self.variables, out)

    def var_multiple(self, var: str, series: PuiseuxSeries) -> "Poly":
        """Return ``series * var * self`` (left multiplication by a monomial)."""
        i = self.variables.index(var)
        out = {}
        for mono, s in self._terms.items():
            m = list(mono)
            m[i] += 1
            out[tuple(m)] = s * series
        return Poly(self.variables, out)

    def equal_to_order(self, other: "Poly", order=None) -> Comparison:
        """Coefficient-wise comparison; absent monomials compare as zero."""
        if self.variables != other.variables:
            raise ValueError("variable sets differ")
        verified = None
        for mono in sorted(set(self._terms) | set(other._terms)):
            lhs = self._terms.get(mono)
            rhs = other._terms.get(mono)
            if lhs is None:
                lhs = PuiseuxSeries.zero(rhs.precision_exponent)
            if rhs is None:
                rhs = PuiseuxSeries.zero(lhs.precision_exponent)
            cmp = lhs.equal_to_order(rhs, order)
            if verified is None or cmp.verified_to < verified:
                verified = cmp.verified_to
            if not cmp.ok:
                name = self.monomial_name(mono)
                return Comparison(
                    False,
                    cmp.verified_to,
                    PolyMismatch(name, cmp.mismatch.exponent, cmp.mismatch.lhs, cmp.mismatch.rhs),
                )
        if verified is None:
            verified = Fraction(order) if order is not None else Fraction(0)
        return Comparison(True, verified)

    def to_json_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "monomials": [
                {
                    "monomial": self.monomial_name(m),
                    "exponents": list(m),
                    "series": self._terms[m].to_json_dict(),
                }
                for m in self.monomials()
            ],
        }


def _parse_monomial(name: str, variables: tuple[str, ...]) -> tuple[int, ...]:
    exps = [0] * len(variables)
    if name.strip() == "1":
        return tuple(exps)
    for factor in name.split():
        if "^" in factor:
            var, e = factor.split("^")
            e = int(e)
        else:
            var, e = factor, 1
        exps[variables.index(var)] += e
    return tuple(exps)
