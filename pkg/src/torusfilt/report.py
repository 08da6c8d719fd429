"""Pass/fail reports with deterministic JSON serialisation.

Rationals are written as ``p/q`` strings (integers included), polynomials in
their graded-lex rendering.  ``to_json`` sorts keys, so identical jobs give
byte-identical documents.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction

from .exactlin import format_rational
from .polyring import MultiPoly


@dataclass(frozen=True)
class Check:
    section: str
    name: str
    passed: bool
    detail: str = ""


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, MultiPoly):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


class Report:
    def __init__(self, kind: str, job: dict):
        self.kind = kind
        self.job = job
        self.sections: dict = {}
        self.checks: list = []

    def section(self, name: str) -> dict:
        return self.sections.setdefault(name, {})

    def check(self, section: str, name: str, passed: bool, detail: str = "") -> bool:
        self.section(section)
        self.checks.append(Check(section, name, bool(passed), detail))
        return bool(passed)

    def section_passed(self, name: str) -> bool:
        return all(c.passed for c in self.checks if c.section == name)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        sections = {}
        for name, data in self.sections.items():
            sections[name] = dict(data, status=status(self.section_passed(name)))
        return {
            "kind": self.kind,
            "job": self.job,
            "sections": sections,
            "checks": [
                {"section": c.section, "name": c.name, "status": status(c.passed), "detail": c.detail}
                for c in self.checks
            ],
            "overall": status(self.overall),
        }

    def to_json(self) -> str:
        return json.dumps(to_jsonable(self.to_dict()), indent=2, sort_keys=True) + "\n"

    def summary(self) -> str:
        lines = [f"{self.kind} report"]
        for key in ("gr_dims", "component_gr_dims", "h_vector"):
            for name, data in self.sections.items():
                if key in data:
                    lines.append(f"  {name}.{key}: {tuple(data[key])}")
        for name, data in self.sections.items():
            for row in data.get("agreement_table", ()):
                cells = ", ".join(f"{k}={tuple(v) if isinstance(v, list) else v}" for k, v in row.items())
                lines.append(f"  {name}: {cells}")
        for c in self.checks:
            tail = f"  ({c.detail})" if c.detail else ""
            lines.append(f"  [{status(c.passed)}] {c.section}: {c.name}{tail}")
        lines.append(f"overall: {status(self.overall)}")
        return "\n".join(lines) + "\n"
