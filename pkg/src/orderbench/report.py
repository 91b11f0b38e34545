"""Named check lists with verdicts and failure witnesses.

A Report is the universal result currency of the verifiers: a named list
of (property, verdict, witness) triples.  Verdicts are True, False, or
None for not-applicable (a prerequisite of that particular check did not
hold).  A witness accompanies every False verdict; witnesses are tuples
of ints, either element indices or subset bitmasks depending on the
check (the check name makes clear which).
"""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    name: str
    holds: bool | None
    witness: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "axiom": self.name,
            "holds": self.holds,
            "witness": list(self.witness) if self.witness is not None else None,
        }


@dataclass(frozen=True)
class Report:
    name: str
    checks: tuple[Check, ...]
    passed: bool | None = None

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def holds(self, name: str) -> bool | None:
        return self[name].holds

    @property
    def ok(self) -> bool:
        """True when no check is outright False (None counts as not failed)."""
        return all(c.holds is not False for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.holds is False]

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.checks]

    def render(self) -> str:
        width = max((len(c.name) for c in self.checks), default=4)
        lines = [f"[{self.name}]"]
        for c in self.checks:
            verdict = {True: "pass", False: "FAIL", None: "n/a"}[c.holds]
            suffix = f"  witness={c.witness}" if c.holds is False and c.witness is not None else ""
            lines.append(f"  {c.name:<{width}}  {verdict}{suffix}")
        if self.passed is not None:
            lines.append(f"  => {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def report(name: str, checks, passed=None) -> Report:
    checks = tuple(checks)
    if passed is None:
        passed = all(c.holds is not False for c in checks)
    return Report(name, checks, passed)


def reports_to_json(reports) -> str:
    return json.dumps({r.name: r.to_json() for r in reports}, indent=2)
