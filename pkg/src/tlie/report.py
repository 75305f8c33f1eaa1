"""Structured check results shared by the verifiers and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .core import TensorPoly

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Witness:
    """A concrete input on which a check fails, with its nonzero discrepancy."""

    check: str
    inputs: tuple
    discrepancy: TensorPoly
    detail: str = ""

    def to_dict(self, key: Callable | None = None) -> dict:
        out = {
            "check": self.check,
            "inputs": [list(x) if isinstance(x, tuple) else x for x in self.inputs],
            "discrepancy": self.discrepancy.to_str(key),
        }
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CheckRecord:
    check: str
    status: str
    witnesses: list[Witness] = field(default_factory=list)
    bounds: dict = field(default_factory=dict)
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)
    cases: int = 0
    label: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self, key: Callable | None = None, timing: bool = True) -> dict:
        out = {
            "check": self.check,
            "label": self.label or self.check,
            "status": self.status,
            "cases": self.cases,
            "bounds": dict(self.bounds),
            "witnesses": [w.to_dict(key) for w in self.witnesses],
            "notes": list(self.notes),
        }
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class VerificationReport:
    spec_name: str
    records: list[CheckRecord] = field(default_factory=list)
    key: Callable | None = None

    @property
    def ok(self) -> bool:
        return not any(r.failed for r in self.records)

    def record(self, check: str) -> CheckRecord:
        for r in self.records:
            if r.check == check:
                return r
        raise KeyError(check)

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "spec": self.spec_name,
            "ok": self.ok,
            "checks": [r.to_dict(self.key, timing) for r in self.records],
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, ensure_ascii=False)

    def table(self) -> str:
        rows = [("check", "status", "cases", "seconds", "notes")]
        for r in self.records:
            rows.append((r.label or r.check, r.status, str(r.cases), f"{r.seconds:.3f}", "; ".join(r.notes)))
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        lines = [f"algebra: {self.spec_name}"]
        for row in rows:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row[:4], widths)) + ("  " + row[4] if row[4] else ""))
        for r in self.records:
            for w in r.witnesses[:3]:
                lines.append(f"  {r.check} witness {w.inputs}: {w.discrepancy.to_str(self.key)}")
        return "\n".join(lines)
