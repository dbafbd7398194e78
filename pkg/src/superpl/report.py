"""Structured pass/fail records for the verification suites."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

SCHEMA_VERSION = "superpl.report.v1"


@dataclass
class SuiteResult:
    name: str
    attempted: int = 0
    passed: int = 0
    witness: dict | None = None
    wall_time: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def failures(self) -> int:
        return self.attempted - self.passed

    @property
    def ok(self) -> bool:
        return self.attempted == self.passed

    def check(self, ok: bool, witness=None) -> bool:
        """Record one check; keep the first failing witness (callable or dict)."""
        self.attempted += 1
        if ok:
            self.passed += 1
        elif self.witness is None:
            self.witness = witness() if callable(witness) else (witness or {})
        return ok

    def merge(self, other: "SuiteResult", prefix: str | None = None) -> None:
        self.attempted += other.attempted
        self.passed += other.passed
        if self.witness is None and other.witness is not None:
            self.witness = dict(other.witness, check=prefix or other.name)
        for k, v in other.notes.items():
            self.notes[f"{prefix}.{k}" if prefix else k] = v

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "name": self.name,
            "attempted": self.attempted,
            "passed": self.passed,
            "failures": self.failures,
            "witness": self.witness,
            "notes": self.notes,
        }
        if timings:
            d["wall_time"] = round(self.wall_time, 3)
        return d


class Timer:
    def __init__(self, result: SuiteResult):
        self.result = result

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self.result

    def __exit__(self, *exc):
        self.result.wall_time += time.perf_counter() - self._t0
        return False


@dataclass
class VerificationReport:
    config: dict
    suites: list = field(default_factory=list)
    conventions: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    def suite(self, name: str) -> SuiteResult | None:
        for s in self.suites:
            if s.name == name:
                return s
        return None

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "config": self.config,
            "suites": [s.to_dict(timings) for s in self.suites],
            "conventions": self.conventions,
            "overall_pass": self.ok,
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    def to_markdown(self) -> str:
        c = self.config
        lines = [
            f"# Verification report ({c.get('m')}|{c.get('n')}), D = {c.get('degree')}",
            "",
            "| suite | attempted | passed | time (s) |",
            "|---|---:|---:|---:|",
        ]
        for s in self.suites:
            lines.append(f"| {s.name} | {s.attempted} | {s.passed} | {s.wall_time:.2f} |")
        lines += ["", f"**overall: {'PASS' if self.ok else 'FAIL'}**", ""]
        if self.conventions:
            lines += ["## Conventions", ""]
            for k in sorted(self.conventions):
                lines.append(f"- `{k}`: {json.dumps(self.conventions[k], sort_keys=True)}")
            lines.append("")
        for s in self.suites:
            if s.witness is not None:
                lines += [f"## First failure in `{s.name}`", "", "```json",
                          json.dumps(s.witness, indent=2, sort_keys=True), "```", ""]
        return "\n".join(lines)
