"""Exception hierarchy shared across the package.

Every library-raised error derives from GraphGenError so callers can
catch one type at the boundary. Subclasses mark the contract that was
violated, not the module that noticed it.
"""

from __future__ import annotations


class GraphGenError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GraphGenError):
    """Malformed input file. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(GraphGenError):
    """A value is outside the mathematical domain of an operation."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyInputError(GraphGenError):
    """An input that must contain at least one item contained none."""


class DegeneracyError(GraphGenError):
    """Weights carry no mass, so the vertex distribution is undefined."""


class BenchError(GraphGenError):
    """A benchmark precondition or internal sanity check failed."""
