"""Verdict containers shared by the axiom checkers."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    name: str
    status: str = PASS
    mode: str = "exhaustive"
    checked: int = 0
    witness: object = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def fail(self, witness, detail: str = "") -> None:
        # keep the first counterexample found in canonical order
        if self.status != FAIL:
            self.status = FAIL
            self.witness = witness
            self.detail = detail

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "mode": self.mode, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class AxiomReport:
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    def add(self, v: Verdict) -> Verdict:
        self.verdicts[v.name] = v
        return v

    def __getitem__(self, name: str) -> Verdict:
        return self.verdicts[name]

    def __iter__(self):
        return iter(self.verdicts.values())

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts.values())

    @property
    def status(self) -> str:
        states = {v.status for v in self.verdicts.values()}
        if FAIL in states:
            return FAIL
        if INCONCLUSIVE in states:
            return INCONCLUSIVE
        return PASS

    def failed(self) -> list[str]:
        return [n for n, v in self.verdicts.items() if v.status == FAIL]

    def to_json(self) -> list[dict]:
        return [v.to_json() for v in self.verdicts.values()]
