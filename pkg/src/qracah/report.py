"""Verification results and their JSON / text serialization.

JSON schema::

    {"params": {"q", "a", "b", "c", "d", "field", "basis"},
     "checks": [{"id", "paper_ref", "status", "detail"}, ...],
     "summary": {"pass", "fail", "skipped"}}

Field elements are written as ``"num/den"`` (or ``"num"``) for rationals and
as decimal residues for prime fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .params import QRacahParams

__all__ = ["CheckResult", "VerificationReport", "emit_report", "parse_report", "STATUSES"]

STATUSES = ("pass", "fail", "skipped")


@dataclass(frozen=True)
class CheckResult:
    id: str
    paper_ref: str
    status: str
    detail: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and not self.detail:
            raise ValueError("a failing result needs a witness")

    def to_dict(self) -> dict[str, str]:
        return {"id": self.id, "paper_ref": self.paper_ref, "status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class VerificationReport:
    params: dict[str, Any]
    checks: tuple[CheckResult, ...]
    summary: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        counts = {s: sum(1 for c in self.checks if c.status == s) for s in STATUSES}
        if self.summary and self.summary != counts:
            raise ValueError(f"summary {self.summary} disagrees with results {counts}")
        object.__setattr__(self, "summary", counts)

    @classmethod
    def from_results(cls, p: QRacahParams, basis: str, results: list[CheckResult]) -> "VerificationReport":
        echo = {
            "q": str(p.q),
            "a": str(p.a),
            "b": str(p.b),
            "c": str(p.c),
            "d": p.d,
            "field": p.field.descriptor,
            "basis": basis,
        }
        return cls(echo, tuple(results))

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self) -> dict[str, Any]:
        return {
            "params": dict(self.params),
            "checks": [c.to_dict() for c in self.checks],
            "summary": dict(self.summary),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "VerificationReport":
        checks = tuple(CheckResult(**c) for c in data["checks"])
        return cls(dict(data["params"]), checks, dict(data["summary"]))


def _text_table(report: VerificationReport) -> str:
    p = report.params
    lines = [
        f"field={p['field']} basis={p['basis']} q={p['q']} a={p['a']} b={p['b']} c={p['c']} d={p['d']}",
    ]
    width = max([len(c.id) for c in report.checks] + [5])
    lines.append(f"{'check':<{width}}  {'status':<7}  detail")
    lines.append(f"{'-' * width}  {'-' * 7}  {'-' * 6}")
    for c in report.checks:
        lines.append(f"{c.id:<{width}}  {c.status:<7}  {c.detail}".rstrip())
    s = report.summary
    lines.append(f"pass={s['pass']} fail={s['fail']} skipped={s['skipped']}")
    return "\n".join(lines) + "\n"


def emit_report(report: VerificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=False) + "\n"
    if fmt == "text":
        return _text_table(report)
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text: str) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(text))
