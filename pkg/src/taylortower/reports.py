"""Machine-readable verification results shared by every checker."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .series import Monomial, Series, first_difference, format_rational, parse_rational

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class Witness:
    monomial: Monomial
    expected: Fraction
    actual: Fraction
    context: str = ""

    def to_json(self) -> dict:
        d = {
            "monomial": {"x": list(self.monomial.x), "q": self.monomial.q},
            "expected": format_rational(self.expected),
            "actual": format_rational(self.actual),
        }
        if self.context:
            d["context"] = self.context
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "Witness":
        m = d["monomial"]
        return cls(Monomial(tuple(m["x"]), int(m.get("q", 0))),
                   parse_rational(d["expected"]), parse_rational(d["actual"]),
                   d.get("context", ""))


@dataclass
class ReportDocument:
    identity_name: str
    parameters: dict[str, str]
    order_checked: int
    status: str
    witness: Witness | None = None
    elapsed_ms: int = 0
    details: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in (PASS, FAIL):
            raise ValueError(f"status must be pass or fail, not {self.status!r}")
        if (self.status == FAIL) != (self.witness is not None):
            raise ValueError("a failing report needs a witness and a passing one must not carry one")
        self.parameters = {str(k): str(v) for k, v in self.parameters.items()}

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self, with_timing: bool = True) -> dict:
        d: dict[str, Any] = {
            "identity_name": self.identity_name,
            "parameters": dict(sorted(self.parameters.items())),
            "order_checked": self.order_checked,
            "status": self.status,
            "witness": self.witness.to_json() if self.witness else None,
        }
        if self.details:
            d["details"] = list(self.details)
        if with_timing:
            d["elapsed_ms"] = self.elapsed_ms
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "ReportDocument":
        w = d.get("witness")
        return cls(d["identity_name"], dict(d.get("parameters", {})), int(d["order_checked"]),
                   d["status"], Witness.from_json(w) if w else None,
                   int(d.get("elapsed_ms", 0)), list(d.get("details", [])))

    def summary(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        line = f"[{self.status.upper()}] {self.identity_name}"
        if params:
            line += f" ({params})"
        line += f" order={self.order_checked}"
        if self.witness:
            w = self.witness
            where = f"x={list(w.monomial.x)} q={w.monomial.q}"
            ctx = f" {w.context}" if w.context else ""
            line += (f" witness:{ctx} {where} expected {format_rational(w.expected)}"
                     f" got {format_rational(w.actual)}")
        return line


def compare(expected: Series, actual: Series, order: int | None = None,
            context: str = "") -> Witness | None:
    """First coefficient where two series disagree through ``order``."""
    m = first_difference(expected, actual, order)
    if m is None:
        return None
    return Witness(m, expected.coefficient(m), actual.coefficient(m), context)


class Timer:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def ms(self) -> int:
        return int(round((time.perf_counter() - self.start) * 1000))


def make_report(name: str, params: Mapping[str, Any], order: int, witness: Witness | None,
                timer: Timer | None = None, details: list[str] | None = None) -> ReportDocument:
    return ReportDocument(
        identity_name=name,
        parameters={k: str(v) for k, v in params.items()},
        order_checked=order,
        status=FAIL if witness else PASS,
        witness=witness,
        elapsed_ms=timer.ms if timer else 0,
        details=list(details or []),
    )
