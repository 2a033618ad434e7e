"""Diagnostic records shared by the parser, the merger and the CLI."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Severity(enum.Enum):
    ERROR = "ERROR"
    WARNING = "WARNING"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    line: int
    column: int
    message: str
    source_text: str = ""
    code: str = ""

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1:
            raise ValueError("diagnostic positions are 1-based")

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def format(self) -> str:
        return f"{self.severity.value} {self.line}:{self.column} {self.message}"


def error(message: str, *, line: int = 1, column: int = 1, source_text: str = "", code: str = "") -> Diagnostic:
    return Diagnostic(Severity.ERROR, line, column, message, source_text, code)


def warning(message: str, *, line: int = 1, column: int = 1, source_text: str = "", code: str = "") -> Diagnostic:
    return Diagnostic(Severity.WARNING, line, column, message, source_text, code)


class DiagnosticError(Exception):
    """Raised by operations that fail with a single diagnostic."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic
