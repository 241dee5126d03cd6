"""Validation reports returned by the various ``validate_*`` entry points."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass
class ValidationReport:
    issues: list[ValidationIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, code: str, message: str) -> None:
        self.issues.append(ValidationIssue(code, message))

    def codes(self) -> set[str]:
        return {i.code for i in self.issues}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(str(i) for i in self.issues)
