from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__

PASS, WARN, FAIL, INFO = "pass", "warn", "fail", "info"


@dataclass
class Check:
    name: str
    status: str
    summary: str = ""
    detail: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "summary": self.summary, "detail": self.detail}


def status_of(ok: bool, warn: bool = False) -> str:
    if not ok:
        return FAIL
    return WARN if warn else PASS


@dataclass
class ReportDocument:
    command: str
    config: dict[str, Any]
    checks: list[Check] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, WARN: 0, FAIL: 0, INFO: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_json(self) -> dict:
        return {
            "tool": "powersums",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "checks": [c.to_json() for c in self.checks],
            "counts": self.counts(),
            "verdict": self.verdict,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=True) + "\n"

    def render_text(self) -> str:
        lines = [f"powersums {__version__}: {self.command}"]
        for c in self.checks:
            lines.append(f"[{c.status.upper():4}] {c.name}: {c.summary}")
        counts = self.counts()
        lines.append(
            f"verdict: {self.verdict.upper()} "
            f"({counts[PASS]} pass, {counts[WARN]} warn, {counts[FAIL]} fail, {counts[INFO]} info)"
        )
        return "\n".join(lines) + "\n"
