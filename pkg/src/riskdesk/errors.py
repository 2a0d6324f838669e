"""Exception types shared across the riskdesk package."""

from __future__ import annotations


class RiskdeskError(Exception):
    """Base class for every riskdesk failure."""


class OutOfRange(RiskdeskError, ValueError):
    """A rating fell outside its scale bounds."""


class UnknownLabel(RiskdeskError, ValueError):
    """A label string does not belong to the named scale."""


class NegativeRate(RiskdeskError, ValueError):
    """An incident rate below zero was supplied."""


class OutOfPolicyRange(RiskdeskError, ValueError):
    """A risk impact score cannot be classified under the active policy."""


class NotFound(RiskdeskError):
    """A register document does not exist at the given location."""


class ParseError(RiskdeskError):
    """A register document is malformed.

    ``position`` is either a character offset / "line L column C" string for
    syntax errors, or a JSON-path-like locator for schema errors.
    """

    def __init__(self, position: str, reason: str):
        self.position = position
        self.reason = reason
        super().__init__(f"{position}: {reason}")


class IntegrityError(RiskdeskError):
    """One or more references point at records that do not exist."""

    def __init__(self, dangling: list[str]):
        self.dangling = list(dangling)
        super().__init__("dangling references: " + ", ".join(self.dangling))


class ConflictError(RiskdeskError):
    """An optimistic version check failed; someone else committed first."""

    def __init__(self, expected_version: int, actual_version: int):
        self.expected_version = expected_version
        self.actual_version = actual_version
        super().__init__(
            f"version conflict: expected {expected_version}, found {actual_version}"
        )


class IoError(RiskdeskError):
    """Reading or writing a register document failed at the OS level."""


class HeaderMismatch(RiskdeskError):
    """A CSV header row does not match the assessment-matrix contract."""


class RowError(RiskdeskError):
    """A CSV data row is invalid. ``line`` is 1-based, counting the header."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class FutureDateError(RiskdeskError, ValueError):
    """An assessment date lies after the reference date."""


class UnknownEntry(RiskdeskError, KeyError):
    """An assessment entry id does not exist in the register."""

    def __init__(self, entry_id: str):
        self.entry_id = entry_id
        super().__init__(f"unknown entry: {entry_id}")

    def __str__(self) -> str:
        return f"unknown entry: {self.entry_id}"


class DuplicateEntry(RiskdeskError, ValueError):
    """The same entry id appears more than once in a batch."""


class NotImplementedStatus(RiskdeskError, ValueError):
    """A remediation must have Implemented status to be committed."""


class InconsistentRegister(RiskdeskError):
    """Entries are flagged for recompute; scores cannot be trusted yet."""
