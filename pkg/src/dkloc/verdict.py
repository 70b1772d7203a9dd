"""Three-valued verdicts and named reports of verdicts."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a single check.

    ``detail`` is the witness for a failure or the reason for an
    inconclusive outcome; ``bounds`` records every cap and effort used so
    that no verdict can be quoted without them.
    """

    status: Status
    detail: str = ""
    bounds: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status is not Status.PASS and not self.detail:
            raise ValueError(f"{self.status.value} verdict needs a witness or reason")

    @classmethod
    def ok(cls, detail: str = "", **bounds) -> "Verdict":
        return cls(Status.PASS, detail, dict(bounds))

    @classmethod
    def fail(cls, witness: str, **bounds) -> "Verdict":
        return cls(Status.FAIL, witness, dict(bounds))

    @classmethod
    def inconclusive(cls, reason: str, **bounds) -> "Verdict":
        return cls(Status.INCONCLUSIVE, reason, dict(bounds))

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL

    @property
    def inconclusive_(self) -> bool:
        return self.status is Status.INCONCLUSIVE

    def with_bounds(self, **bounds) -> "Verdict":
        return Verdict(self.status, self.detail, {**self.bounds, **bounds})

    def to_json(self) -> dict:
        out: dict[str, Any] = {"status": self.status.value}
        if self.detail:
            out["detail"] = self.detail
        if self.bounds:
            out["bounds"] = dict(self.bounds)
        return out

    def __str__(self):
        s = self.status.value.upper()
        return f"{s}: {self.detail}" if self.detail else s


def combine(verdicts, label: str = "") -> Verdict:
    """Fail if any fails (first witness wins), else Inconclusive if any is, else Pass."""
    verdicts = list(verdicts)
    for v in verdicts:
        if v.failed:
            return Verdict.fail(f"{label}{v.detail}" if label else v.detail)
    for v in verdicts:
        if v.inconclusive_:
            return Verdict.inconclusive(f"{label}{v.detail}" if label else v.detail)
    return Verdict.ok()


@dataclass
class Report:
    """An ordered collection of named verdicts plus free-form data."""

    title: str
    checks: dict[str, Verdict] = field(default_factory=dict)
    data: dict[str, Any] = field(default_factory=dict)
    bounds: dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, verdict: Verdict) -> Verdict:
        if name in self.checks:
            raise KeyError(f"duplicate check {name!r}")
        self.checks[name] = verdict
        return verdict

    @property
    def summary(self) -> Verdict:
        return _summarize(self.checks)

    @property
    def status(self) -> Status:
        return self.summary.status

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "bounds": dict(self.bounds),
            "checks": {k: v.to_json() for k, v in self.checks.items()},
            "data": self.data,
            "summary": self.summary.to_json(),
        }


def _summarize(checks: dict[str, Verdict]) -> Verdict:
    for name, v in checks.items():
        if v.failed:
            return Verdict.fail(f"{name}: {v.detail}")
    for name, v in checks.items():
        if v.inconclusive_:
            return Verdict.inconclusive(f"{name}: {v.detail}")
    return Verdict.ok()
