"""Deterministic line-oriented check reports shared by the verifier
suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    instance: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f"  # {self.detail}" if self.detail and not self.ok else ""
        return f"{status} {self.check_id} {self.instance}{tail}"


def all_ok(results) -> bool:
    return all(r.ok for r in results)


def render(results) -> str:
    return "\n".join(r.line() for r in results)
