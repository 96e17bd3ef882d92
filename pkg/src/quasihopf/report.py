"""Machine-readable verification reports shared by every verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    lhs: tuple
    rhs: tuple

    def sort_key(self):
        return (self.axiom, tuple(str(w) for w in self.witness))


@dataclass
class VerificationReport:
    """Ordered record of the axioms checked and every violated instance.

    An empty ``violations`` list means everything passed.  ``info`` carries
    auxiliary data (dimensions, matrices) that is not a pass/fail check.
    """

    checked: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    def declare(self, axiom: str) -> None:
        if axiom not in self.checked:
            self.checked.append(axiom)

    def expect(self, axiom: str, witness: tuple, lhs, rhs) -> bool:
        """Record ``lhs == rhs`` for one instance; returns whether it held."""
        self.declare(axiom)
        lhs_c, rhs_c = _coords(lhs), _coords(rhs)
        if lhs_c == rhs_c:
            return True
        self.violations.append(Violation(axiom, tuple(witness), lhs_c, rhs_c))
        return False

    def fail(self, axiom: str, witness: tuple = (), lhs=(), rhs=()) -> None:
        self.declare(axiom)
        self.violations.append(Violation(axiom, tuple(witness), _coords(lhs), _coords(rhs)))

    def require(self, axiom: str, condition: bool, witness: tuple = ()) -> bool:
        self.declare(axiom)
        if not condition:
            self.violations.append(Violation(axiom, tuple(witness), (), ()))
        return bool(condition)

    def extend(self, other: VerificationReport, prefix: str = "") -> VerificationReport:
        for a in other.checked:
            self.declare(prefix + a)
        for v in other.violations:
            self.violations.append(Violation(prefix + v.axiom, v.witness, v.lhs, v.rhs))
        return self

    @property
    def ok(self) -> bool:
        return not self.violations

    def passed(self, axiom: str) -> bool:
        return axiom in self.checked and axiom not in self.failed_axioms

    @property
    def failed_axioms(self) -> list[str]:
        seen = []
        for v in self.sorted_violations():
            if v.axiom not in seen:
                seen.append(v.axiom)
        return seen

    def sorted_violations(self) -> list[Violation]:
        return sorted(self.violations, key=Violation.sort_key)

    def summary(self) -> str:
        if self.ok:
            return f"pass ({len(self.checked)} checks)"
        return "fail: " + ", ".join(self.failed_axioms)

    def __repr__(self):
        return f"<VerificationReport {self.summary()}>"


def _coords(x) -> tuple:
    if hasattr(x, "coords"):
        return tuple(x.coords)
    if isinstance(x, (list, tuple)):
        return tuple(x)
    return (x,)


class VerificationError(Exception):
    """A construction refused to emit a structure that failed verification."""

    def __init__(self, message: str, report: VerificationReport):
        super().__init__(f"{message}: {report.summary()}")
        self.report = report


class PreconditionError(VerificationError):
    """Input data does not satisfy an operation's precondition."""
