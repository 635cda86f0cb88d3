"""
Diagnostic and grounding-report models.

Map bundles and grammars report every problem they find at once; generated
records are audited slot by slot.
"""

from enum import Enum
from typing import Any

from pydantic import BaseModel, Field


class Severity(str, Enum):
    """How bad a diagnostic is; only errors block."""

    INFO = "info"
    WARNING = "warning"
    ERROR = "error"

    @property
    def is_blocking(self) -> bool:
        """Check if this severity makes validation fail."""
        return self is Severity.ERROR


class MapDiagnostic(BaseModel):
    """A problem found while loading or validating a map bundle or grammar."""

    code: str = Field(..., description="Machine-readable issue code, e.g. 'open_ring'")
    severity: Severity = Field(default=Severity.ERROR)
    message: str = Field(..., description="Human-readable issue description")
    file: str | None = Field(default=None, description="File where the issue was found")
    line: int | None = Field(default=None, description="1-based line number", ge=1)
    field: str | None = Field(default=None, description="Offending record field")
    details: dict[str, Any] = Field(default_factory=dict)

    def to_string(self) -> str:
        """One-line form: `[SEVERITY] code at file:line [field]: message`."""
        location = ""
        if self.file:
            location = f" at {self.file}"
            if self.line:
                location += f":{self.line}"
        if self.field:
            location += f" [{self.field}]"
        return f"[{self.severity.value.upper()}] {self.code}{location}: {self.message}"


class SlotCheck(BaseModel):
    """Expected versus observed value of one template slot."""

    placeholder: str
    expected: str | None = None
    actual: str | None = None
    passed: bool

    def to_string(self) -> str:
        mark = "ok" if self.passed else "MISMATCH"
        return f"{self.placeholder}: expected={self.expected!r} actual={self.actual!r} {mark}"


class GroundingReport(BaseModel):
    """
    Result of re-deriving a record's spatial facts from the map.

    Fails when any substituted value disagrees with the recomputed one or the
    record's coordinates no longer match the bundle.
    """

    record_id: str
    template_id: str | None = None
    passed: bool = True
    slots: list[SlotCheck] = Field(default_factory=list)
    issues: list[MapDiagnostic] = Field(default_factory=list)

    @property
    def failed_slots(self) -> list[SlotCheck]:
        return [s for s in self.slots if not s.passed]

    def add_slot(self, placeholder: str, expected: str | None, actual: str | None) -> None:
        ok = expected is not None and actual is not None and expected.lower() == actual.lower()
        self.slots.append(
            SlotCheck(placeholder=placeholder, expected=expected, actual=actual, passed=ok)
        )
        if not ok:
            self.passed = False

    def add_issue(self, code: str, message: str, **kwargs: Any) -> None:
        self.issues.append(MapDiagnostic(code=code, message=message, **kwargs))
        self.passed = False

    def to_summary(self) -> str:
        """Multi-line report of the record and every mismatching slot."""
        status = "PASSED" if self.passed else "FAILED"
        lines = [f"{self.record_id}: {status}"]
        for slot in self.failed_slots:
            lines.append(f"  {slot.to_string()}")
        for issue in self.issues:
            lines.append(f"  {issue.to_string()}")
        return "\n".join(lines)

    model_config = {
        "json_schema_extra": {
            "examples": [
                {
                    "record_id": "cfg-0000003",
                    "template_id": "3f9a0c1d2b4e5f60",
                    "passed": False,
                    "slots": [
                        {
                            "placeholder": "CARDINAL_DIRECTION",
                            "expected": "north",
                            "actual": "south",
                            "passed": False,
                        }
                    ],
                }
            ]
        }
    }
