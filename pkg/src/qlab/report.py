"""Outcome record for one identity check.

The JSON form deliberately omits the runtime so that report streams are
byte-identical across runs and across worker counts.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import PolyMismatch
from .series import Comparison, Mismatch


@dataclass
class IdentityReport:
    name: str
    verified_to: Fraction
    status: str  # "ok" | "mismatch"
    first_mismatch: dict | None = None
    note: str | None = None
    runtime_seconds: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json_dict(self) -> dict:
        data = {
            "name": self.name,
            "verified_to": str(self.verified_to),
            "status": self.status,
        }
        if self.first_mismatch is not None:
            data["first_mismatch"] = self.first_mismatch
        if self.note is not None:
            data["note"] = self.note
        return data

    def to_json_line(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))


def mismatch_dict(m: Mismatch | PolyMismatch) -> dict:
    data = {"exponent": str(m.exponent), "lhs": str(m.lhs), "rhs": str(m.rhs)}
    if isinstance(m, PolyMismatch):
        data["monomial"] = m.monomial
    return data


def report_from_comparison(
    name: str, cmp: Comparison, note: str | None = None
) -> IdentityReport:
    if cmp.ok:
        return IdentityReport(name, cmp.verified_to, "ok", note=note)
    return IdentityReport(
        name, cmp.verified_to, "mismatch", first_mismatch=mismatch_dict(cmp.mismatch), note=note
    )
