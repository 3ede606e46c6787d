"""Exception types shared across the toolkit.

Everything raised on purpose derives from MbsError so callers (and the CLI,
which maps them to exit code 2) can catch one base class.
"""

from __future__ import annotations


class MbsError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(MbsError):
    """A surface description is structurally ill-formed."""


class EmptySectorBoundary(ValidationError):
    pass


class DanglingBranchReference(ValidationError):
    pass


class ZeroDegree(ValidationError):
    pass


class IsolatedBranch(ValidationError):
    pass


class DuplicateId(ValidationError):
    pass


class UnknownBranch(MbsError):
    pass


class UnknownSector(MbsError):
    pass


class NotRegular(MbsError):
    pass


class NonorientableSector(MbsError):
    pass


class Disconnected(MbsError):
    pass


class InternalMismatch(MbsError):
    """Two independent computations of the same quantity disagreed: a bug."""


class OddComponentChi(InternalMismatch):
    """A closed boundary component came out with odd Euler characteristic."""


class NotAnAnnulus(MbsError):
    pass


class DegreeNotOne(MbsError):
    pass


class SameBranch(MbsError):
    pass


class ResultCapExceeded(MbsError):
    pass


class SearchBudgetExceeded(MbsError):
    pass


class DocumentSyntaxError(MbsError):
    """Bad token-level structure in the text format."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SemanticError(MbsError):
    """The document parsed but does not describe a legal surface."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
