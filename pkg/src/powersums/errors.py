from __future__ import annotations

from typing import Any

__all__ = ["InvariantBreach", "ConjectureViolation", "BudgetExceeded"]


class InvariantBreach(RuntimeError):
    """An internal consistency check failed; this indicates a bug, not a counterexample."""


class BudgetExceeded(RuntimeError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"enumeration needs {count} tuples, budget is {budget}")
        self.count = count
        self.budget = budget


class ConjectureViolation(Exception):
    """A conjectured identity failed on concrete data.

    ``witness`` holds exact values already encoded as strings so the
    violation serializes without loss.
    """

    def __init__(self, conjecture: str, clause: str, witness: dict[str, Any] | None = None):
        super().__init__(f"[{conjecture}] {clause}")
        self.conjecture = conjecture
        self.clause = clause
        self.witness = dict(witness or {})

    def to_json(self) -> dict:
        return {"conjecture": self.conjecture, "clause": self.clause, "witness": self.witness}
