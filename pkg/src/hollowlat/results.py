from __future__ import annotations

from dataclasses import dataclass, field

HOLDS = "holds"
VIOLATED = "violated"
UNMET = "hypothesis-unmet"
NOTED = "noted"

STATUSES = (HOLDS, VIOLATED, UNMET, NOTED)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one property check on one lattice.

    ``witness`` is a tuple of ``(key, value)`` pairs; element values are ids.
    """

    check: str
    lattice: str
    status: str
    witness: tuple = field(default=())
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def violated(self) -> bool:
        return self.status == VIOLATED

    def witness_dict(self) -> dict:
        return dict(self.witness)

    def witness_text(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self.witness)
