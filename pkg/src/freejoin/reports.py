"""Verification reports: exact checks with witnesses for every failure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    task: str
    checks: int = 0
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    values: list[dict[str, Any]] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def check(self, ok: bool, **witness: Any) -> bool:
        self.checks += 1
        if not ok:
            self.witnesses.append({k: _jsonable(v) for k, v in witness.items()})
        return ok

    def expect_equal(self, got, expected, **context: Any) -> bool:
        return self.check(got == expected, got=got, expected=expected, **context)

    def merge(self, other: Report, prefix: str | None = None) -> Report:
        self.checks += other.checks
        for w in other.witnesses:
            self.witnesses.append({"check": prefix, **w} if prefix else w)
        self.values.extend(other.values)
        return self

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "task": self.task,
            "status": self.status,
            "checks": self.checks,
            "witnesses": self.witnesses,
            "values": [{k: _jsonable(v) for k, v in row.items()} for row in self.values],
        }
        if self.info:
            out["info"] = {k: _jsonable(v) for k, v in self.info.items()}
        return out

    def __str__(self) -> str:
        head = f"{self.task}: {self.status} ({self.checks} checks)"
        if self.witnesses:
            head += f", first failure: {self.witnesses[0]}"
        return head


def _jsonable(v: Any) -> Any:
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    if isinstance(v, float):
        return "INFINITE" if v == float("inf") else v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)
