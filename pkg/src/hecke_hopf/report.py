"""Structured check results shared by the verification modules and the CLI."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class VerificationReport:
    check_name: str
    instance: str
    status: str
    witness: Any = None
    timing_ms: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError("a failing report needs a witness")

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_record(self) -> dict:
        rec = asdict(self)
        if not rec["details"]:
            del rec["details"]
        return rec

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, default=str)


def make_report(name: str, instance: str, failures: list, start: float, **details) -> VerificationReport:
    """PASS if ``failures`` is empty, otherwise FAIL with the first one as witness."""
    ms = round((time.perf_counter() - start) * 1000, 3)
    if failures:
        return VerificationReport(name, instance, FAIL, failures[0], ms, dict(details, nfail=len(failures)))
    return VerificationReport(name, instance, PASS, None, ms, details)


@contextmanager
def timer():
    box = {"start": time.perf_counter()}
    yield box
    box["ms"] = round((time.perf_counter() - box["start"]) * 1000, 3)
