from dataclasses import dataclass
from typing import Iterator, List, Optional


class ReversibleBcdError(Exception):
    pass


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    wire: Optional[str] = None
    gate_index: Optional[int] = None
    lineno: Optional[int] = None
    severity: str = "error"

    def __str__(self) -> str:
        where = []
        if self.lineno is not None:
            where.append(f"line {self.lineno}")
        if self.gate_index is not None:
            where.append(f"gate {self.gate_index}")
        prefix = f"{', '.join(where)}: " if where else ""
        return f"{prefix}{self.severity}: {self.message} [{self.rule}]"


class Violations:
    """Findings of a validation pass.

    Only error-severity findings make the collection truthy; warnings are
    kept on the side so callers can report them without failing.
    """

    def __init__(self):
        self.errors: List[Violation] = []
        self.warnings: List[Violation] = []

    def add(
        self,
        rule,
        message,
        wire=None,
        gate_index=None,
        lineno=None,
        severity="error",
    ) -> Violation:
        violation = Violation(
            rule, message, wire, gate_index, lineno, severity
        )
        if severity == "warning":
            self.warnings.append(violation)
        else:
            self.errors.append(violation)
        return violation

    def warn(self, rule, message, **kwargs) -> Violation:
        return self.add(rule, message, severity="warning", **kwargs)

    def extend(self, other) -> None:
        self.errors.extend(other.errors)
        self.warnings.extend(other.warnings)

    def rules(self) -> List[str]:
        return [v.rule for v in self.errors]

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return len(self.errors) > 0

    def __len__(self) -> int:
        return len(self.errors)

    def __getitem__(self, index) -> Violation:
        return self.errors[index]

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.errors)

    def __str__(self) -> str:
        return "\n".join(str(v) for v in self.errors + self.warnings)
