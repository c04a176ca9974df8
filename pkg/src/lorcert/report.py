"""Certificate reports shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .poly import format_fraction

PASS = "pass"
FAIL = "fail"
ZERO = "zero"


def jsonable(value: Any) -> Any:
    """Recursively convert Fractions to ``"p/q"`` strings and tuples to lists."""
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


@dataclass
class CertReport:
    """Verdict of one certificate, with the first failing witness on failure.

    ``verdict`` is ``"pass"``, ``"fail"``, or ``"zero"`` (the input was the
    zero polynomial, which none of the certified classes contain).
    ``instances`` counts the checked instances per family.
    """

    verdict: str
    witness: dict | None = None
    detail: str = ""
    instances: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL, ZERO):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FAIL and self.witness is None:
            raise ValueError("a failing report needs a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        doc = {"verdict": self.verdict, "witness": jsonable(self.witness), "detail": self.detail}
        if self.instances:
            doc["instances"] = dict(self.instances)
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> CertReport:
        return cls(
            verdict=doc["verdict"],
            witness=doc.get("witness"),
            detail=doc.get("detail", ""),
            instances=dict(doc.get("instances", {})),
            notes=list(doc.get("notes", [])),
        )
