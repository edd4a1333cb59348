"""Exception types shared across the package."""

from __future__ import annotations


class BudgetExceeded(RuntimeError):
    """An exhaustive search or enumeration hit its configured cap.

    Oracles in this package are either exhaustive or fail loudly; they never
    truncate silently.
    """

    def __init__(self, what: str, limit: int | float):
        super().__init__(f"{what} exceeded budget of {limit}")
        self.what = what
        self.limit = limit


class GraphParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class InvariantViolation(RuntimeError):
    """An internal certificate failed to verify. Always an implementation bug."""
