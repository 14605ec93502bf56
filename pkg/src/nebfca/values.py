"""Typed attribute values: text, integer, calendar date, and a missing marker.

A missing value never participates in an index relation and never satisfies
a query predicate. Ordering is defined only between values of one variant.
"""

from __future__ import annotations

import datetime
import re
from dataclasses import dataclass
from typing import Union

TEXT = "text"
INTEGER = "integer"
DATE = "date"
MISSING_KIND = "missing"

# rank used when sorting mixed-variant domains deterministically
_KIND_RANK = {DATE: 0, INTEGER: 1, TEXT: 2}

_INT_RE = re.compile(r"-?[0-9]+\Z")
_DATE_RE = re.compile(r"[0-9]{4}-[0-9]{2}-[0-9]{2}\Z")


@dataclass(frozen=True)
class AttributeValue:
    kind: str
    value: Union[str, int, datetime.date, None]

    def __post_init__(self):
        if self.kind == TEXT and not isinstance(self.value, str):
            raise TypeError("text value must be str")
        if self.kind == INTEGER and not isinstance(self.value, int):
            raise TypeError("integer value must be int")
        if self.kind == DATE and not isinstance(self.value, datetime.date):
            raise TypeError("date value must be datetime.date")
        if self.kind == MISSING_KIND and self.value is not None:
            raise TypeError("missing carries no value")
        if self.kind not in (TEXT, INTEGER, DATE, MISSING_KIND):
            raise TypeError(f"unknown value kind {self.kind!r}")

    @property
    def is_missing(self) -> bool:
        return self.kind == MISSING_KIND

    def render(self) -> str:
        """Canonical textual form, used in scaled attribute names."""
        if self.kind == TEXT:
            return self.value
        if self.kind == INTEGER:
            return str(self.value)
        if self.kind == DATE:
            return self.value.isoformat()
        raise ValueError("missing value has no textual form")

    def sort_key(self):
        """Deterministic order: dates, then integers, then text; missing last."""
        if self.is_missing:
            return (3, "")
        return (_KIND_RANK[self.kind], self.value)

    def le(self, other: "AttributeValue") -> bool:
        """Same-variant <=; raises on cross-variant or missing comparison."""
        if self.is_missing or other.is_missing:
            raise ValueError("missing value is not comparable")
        if self.kind != other.kind:
            raise ValueError(f"cannot compare {self.kind} with {other.kind}")
        return self.value <= other.value

    def __repr__(self):
        if self.is_missing:
            return "MISSING"
        return f"{self.kind[0]}:{self.render()}"


MISSING = AttributeValue(MISSING_KIND, None)


def text(s: str) -> AttributeValue:
    return AttributeValue(TEXT, s)


def integer(n: int) -> AttributeValue:
    return AttributeValue(INTEGER, n)


def date(d) -> AttributeValue:
    if isinstance(d, str):
        d = datetime.date.fromisoformat(d)
    return AttributeValue(DATE, d)


def parse_literal(token: str) -> AttributeValue:
    """Auto-type a bare token: integer and ISO-date shapes win over text."""
    if _INT_RE.match(token):
        return integer(int(token))
    if _DATE_RE.match(token):
        try:
            return date(token)
        except ValueError:
            return text(token)
    return text(token)


def would_autotype(token: str) -> bool:
    """True when a bare token would not be read back as text."""
    return parse_literal(token).kind != TEXT
