"""Pass/fail reports shared by the validators."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    checks: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and not self.violations

    def check(self, key: str, passed: bool, message: str = "") -> bool:
        self.checks[key] = self.checks.get(key, True) and bool(passed)
        if not passed and message:
            self.violations.append(f"{key}: {message}")
        return bool(passed)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checks": {k: self.checks[k] for k in sorted(self.checks)},
            "violations": list(self.violations),
            "data": self.data,
        }

    def __bool__(self):
        return self.ok
