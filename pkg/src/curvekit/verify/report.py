"""Claim reports: one entry per checked instance, deterministic ordering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

PASS, FAIL, PARTIAL = "pass", "fail", "partial"


@dataclass
class ClaimResult:
    id: str
    anchor: str
    inputs: dict[str, Any]
    expected: str
    computed: dict[str, Any]
    verdict: str
    seconds: float = 0.0


@dataclass
class ClaimReport:
    suite: str
    surface: str
    version: int
    claims: list[ClaimResult] = field(default_factory=list)
    unfinished: list[str] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if any(c.verdict == FAIL for c in self.claims):
            return FAIL
        if self.unfinished or any(c.verdict == PARTIAL for c in self.claims):
            return PARTIAL
        return PASS

    @property
    def ok(self) -> bool:
        return self.verdict == PASS

    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, PARTIAL: 2}[self.verdict]

    def failures(self) -> list[ClaimResult]:
        return [c for c in self.claims if c.verdict != PASS]

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, PARTIAL: 0}
        for c in self.claims:
            out[c.verdict] += 1
        return out

    def to_json(self, timings: bool = True) -> dict:
        claims = []
        for c in self.claims:
            d = asdict(c)
            if not timings:
                d.pop("seconds")
            claims.append(d)
        data = {
            "suite": self.suite,
            "surface": self.surface,
            "version": self.version,
            "verdict": self.verdict,
            "counts": self.counts(),
            "claims": claims,
            "unfinished": list(self.unfinished),
        }
        if timings:
            data["stats"] = dict(self.stats)
        return data

    def dumps(self, timings: bool = True) -> str:
        return json.dumps(self.to_json(timings), indent=1, sort_keys=True)

    def summary_lines(self) -> list[str]:
        c = self.counts()
        lines = [f"{self.suite} on S_{{{self.surface}}}: {self.verdict} ({c[PASS]} pass, {c[FAIL]} fail, {c[PARTIAL]} partial)"]
        for r in self.failures():
            lines.append(f"  {r.verdict}: {r.id} expected {r.expected}; got {r.computed}")
        for u in self.unfinished:
            lines.append(f"  unfinished: {u}")
        return lines
