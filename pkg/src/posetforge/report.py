"""Structured pass/fail verdicts with replayable witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"


def witness_token(**kv) -> str:
    """Compact witness encoding: key=value pairs joined by commas.

    Values are rendered with repr-free formatting so report lines stay
    grep-able and diff-able.
    """
    parts = []
    for key in sorted(kv):
        value = kv[key]
        if isinstance(value, (list, tuple, frozenset, set)):
            value = "|".join(str(v) for v in sorted(value))
        parts.append(f"{key}={value}")
    return ",".join(parts).replace(" ", "")


@dataclass
class CheckReport:
    """Verdict of one named check; FAIL always carries a witness."""

    name: str
    status: str
    witness: Optional[str] = None
    timing_ms: float = 0.0
    details: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def line(self) -> str:
        if self.status == FAIL and self.witness:
            return f"RESULT {self.name} {self.status} witness={self.witness}"
        return f"RESULT {self.name} {self.status}"


def summary_line(reports) -> str:
    npass = sum(1 for r in reports if r.status == PASS)
    nfail = sum(1 for r in reports if r.status == FAIL)
    nskip = sum(1 for r in reports if r.status == SKIP)
    return f"SUMMARY pass={npass} fail={nfail} skip={nskip}"
