from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .series import QSeries, first_difference


def format_number(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


@dataclass(frozen=True)
class Mismatch:
    t_units: int
    lhs: Fraction
    rhs: Fraction
    sides: str

    def to_dict(self) -> dict:
        return {"t_units": self.t_units, "lhs": format_number(self.lhs), "rhs": format_number(self.rhs)}


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one equality check between two computed series."""

    identity_id: str
    trunc_order: int
    status: str
    sides: str
    first_mismatch: Optional[Mismatch] = None
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"bad status {self.status!r}")
        if (self.status == "fail") != (self.first_mismatch is not None):
            raise ValueError("first_mismatch must be present exactly when status is fail")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "identity": self.identity_id,
            "sides": self.sides,
            "trunc_t_units": self.trunc_order,
            "status": self.status,
            "first_mismatch": self.first_mismatch.to_dict() if self.first_mismatch else None,
            "elapsed_ms": self.elapsed_ms if timing else None,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=False)


def compare_series(identity_id: str, sides: str, lhs: QSeries, rhs: QSeries,
                   elapsed_ms: int = 0) -> VerificationReport:
    trunc = min(lhs.trunc, rhs.trunc)
    diff = first_difference(lhs, rhs)
    if diff is None:
        return VerificationReport(identity_id, trunc, "pass", sides, None, elapsed_ms)
    e, a, b = diff
    return VerificationReport(identity_id, trunc, "fail", sides, Mismatch(e, a, b, sides), elapsed_ms)


@dataclass(frozen=True)
class PairFailure:
    n: int
    t_units: int
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class PairCheckReport:
    label: str
    n_checked: int
    trunc_order: int
    status: str
    first_failure: Optional[PairFailure] = None
    elapsed_ms: int = field(default=0, compare=False)
    check: str = "relation"

    def __post_init__(self):
        if (self.status == "fail") != (self.first_failure is not None):
            raise ValueError("first_failure must be present exactly when status is fail")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, timing: bool = True) -> dict:
        ff = self.first_failure
        return {
            "pair": self.label,
            "check": self.check,
            "n_checked": self.n_checked,
            "trunc_t_units": self.trunc_order,
            "status": self.status,
            "first_failure": None if ff is None else {
                "n": ff.n, "t_units": ff.t_units, "lhs": format_number(ff.lhs), "rhs": format_number(ff.rhs)},
            "elapsed_ms": self.elapsed_ms if timing else None,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing))
