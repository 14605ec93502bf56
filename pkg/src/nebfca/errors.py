"""Exception hierarchy shared by every nebfca module."""

from __future__ import annotations


class NebfcaError(Exception):
    """Base class for all domain errors raised by this package."""


class IdentifierError(NebfcaError):
    """An object, attribute, tag, view, space, or metric name does not exist."""

    def __init__(self, kind: str, name: str):
        super().__init__(f"unknown {kind}: {name!r}")
        self.kind = kind
        self.name = name


class AppositionError(NebfcaError):
    """Two contexts cannot be apposed because their object sets differ."""

    def __init__(self, only_left: frozenset, only_right: frozenset):
        diff = sorted(only_left) + sorted(only_right)
        super().__init__(f"object sets differ, symmetric difference: {diff}")
        self.only_left = only_left
        self.only_right = only_right


class PlanError(NebfcaError):
    """A scale plan does not fit the context it is applied to."""


class FacetError(NebfcaError):
    """Facet plans overlap or reference sorts outside the context."""


class QuerySyntaxError(NebfcaError):
    """Descriptive-name text failed to parse.

    Carries the byte offset of the failure and the tokens that would have
    been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)
        self.offset = offset
        self.expected = expected


class QueryTypeError(NebfcaError):
    """A predicate was applied to a value of an incompatible variant."""


class CycleError(NebfcaError):
    """A scope or sharing graph contains a cycle."""

    def __init__(self, path: list[str]):
        super().__init__(f"cycle through {' -> '.join(path)}")
        self.path = path


class ValidationError(NebfcaError):
    """A knowledge system failed structural validation."""

    def __init__(self, report):
        super().__init__("; ".join(str(v) for v in report.violations))
        self.report = report


class SessionError(NebfcaError):
    """A browse operation mixed neighborhoods from different sessions."""


class FilterError(NebfcaError):
    """A neighborhood filter value is out of range or not applicable."""


class RecordFormatError(NebfcaError):
    """A record fixture file is malformed."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CxtFormatError(NebfcaError):
    """A Burmeister context file is malformed."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class WorkspaceError(NebfcaError):
    """A workspace document is inconsistent or cannot be processed."""
