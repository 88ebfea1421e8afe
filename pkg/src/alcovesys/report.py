"""Verification reports: one JSON record per check, sorted by check id."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable


def jsonable(obj):
    """Recursively convert to JSON-ready data; rationals become "num/den" strings."""
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return obj


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"))


@dataclass
class Report:
    checks: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, check_id: str, kind: str, ok: bool, **data) -> dict:
        rec = {"id": check_id, "kind": kind, "ok": bool(ok), **data}
        self.checks.append(rec)
        return rec

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)
        return self

    def sorted(self) -> "Report":
        return Report(sorted(self.checks, key=lambda r: r["id"]), sorted(set(self.notes)))

    @property
    def failures(self) -> list[str]:
        return sorted(r["id"] for r in self.checks if not r["ok"])

    @property
    def ok(self) -> bool:
        return not self.failures

    def count(self, kind: str | None = None) -> int:
        return sum(1 for r in self.checks if kind is None or r["kind"] == kind)

    def summary(self) -> dict:
        kinds: dict[str, int] = {}
        for r in self.checks:
            kinds[r["kind"]] = kinds.get(r["kind"], 0) + 1
        return {"checks": len(self.checks), "by_kind": dict(sorted(kinds.items())),
                "failures": len(self.failures)}

    def to_json(self) -> dict:
        rep = self.sorted()
        return {"checks": rep.checks, "failures": rep.failures, "notes": rep.notes,
                "summary": rep.summary()}

    def jsonl(self) -> Iterable[str]:
        rep = self.sorted()
        for rec in rep.checks:
            yield dumps(rec)
        yield dumps({"failures": rep.failures, "notes": rep.notes, "summary": rep.summary()})
