"""Named pass/fail records shared by the verifiers and the CLI reports."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"


@dataclass
class Check:
    name: str
    status: str
    witness: Any = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


def check(name: str, ok: bool, witness: Any = None, note: str = "") -> Check:
    """PASS/FAIL record; the witness is only kept on failure."""
    return Check(name, PASS if ok else FAIL, None if ok else witness, note)


def not_applicable(name: str, note: str) -> Check:
    return Check(name, NOT_APPLICABLE, None, note)
