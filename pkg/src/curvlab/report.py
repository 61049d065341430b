"""Structured pass/fail reports shared by the validator, the audits and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from curvlab.curvature import rational_json

SECTIONS = ("validation", "curvature", "pairing", "bounds", "chains", "refinement", "lp")


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return rational_json(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    return value


@dataclass
class Check:
    """One verdict. ``check_id`` is a stable dotted name such as ``pairing.row-sums``."""

    check_id: str
    passed: bool
    message: str = ""
    values: dict[str, Any] = field(default_factory=dict)
    witnesses: list[Any] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.check_id,
            "passed": self.passed,
            "message": self.message,
            "values": _jsonable(self.values),
            "witnesses": _jsonable(self.witnesses),
        }


@dataclass
class AuditReport:
    sections: dict[str, list[Check]] = field(default_factory=dict)
    info: dict[str, Any] = field(default_factory=dict)

    def add(self, section: str, check: Check) -> Check:
        self.sections.setdefault(section, []).append(check)
        return check

    def merge(self, other: AuditReport) -> AuditReport:
        for name, checks in other.sections.items():
            self.sections.setdefault(name, []).extend(checks)
        self.info.update(other.info)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for checks in self.sections.values() for c in checks)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list[Check]:
        return [c for checks in self.sections.values() for c in checks if not c.passed]

    def check(self, check_id: str) -> Check:
        for checks in self.sections.values():
            for c in checks:
                if c.check_id == check_id:
                    return c
        raise KeyError(check_id)

    def has_check(self, check_id: str) -> bool:
        return any(c.check_id == check_id for checks in self.sections.values() for c in checks)

    def to_json(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict,
            "info": _jsonable(self.info),
            "sections": {name: [c.to_json() for c in checks] for name, checks in self.sections.items()},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def render_text(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        for key, value in self.info.items():
            lines.append(f"{key}: {_jsonable(value)}")
        for name, checks in self.sections.items():
            lines.append(f"[{name}]")
            for c in checks:
                mark = "PASS" if c.passed else "FAIL"
                text = f"  {mark} {c.check_id}"
                if c.message:
                    text += f": {c.message}"
                lines.append(text)
                if not c.passed and c.witnesses:
                    shown = ", ".join(str(_jsonable(w)) for w in c.witnesses[:8])
                    more = "" if len(c.witnesses) <= 8 else f" (+{len(c.witnesses) - 8} more)"
                    lines.append(f"      witnesses: {shown}{more}")
        return "\n".join(lines)
