"""Metadata ingestion: filesystem walks and field/value record files.

The record format is blocks of ``field: value`` lines separated by blank
lines; a line starting with whitespace continues the previous value. Bare
values are auto-typed like query literals. A record's identifier is its
``name`` field, falling back to ``title``.
"""

from __future__ import annotations

import datetime
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .context import ManyValuedContext
from .errors import RecordFormatError, WorkspaceError
from .values import AttributeValue, integer, parse_literal, text

log = logging.getLogger("nebfca")

FILE_SORTS = ("name", "size", "created", "modified", "owner", "extension")


@dataclass(frozen=True)
class TagRule:
    """Derive a tag from a path segment of the ingested file's directory.

    ``segment`` indexes the directory parts of the path relative to the
    ingestion root (negative indexes count from the file's parent). A file
    too shallow for the segment gets a missing value and a warning.
    """

    tag: str
    segment: int


def _owner_name(stat_result) -> Optional[str]:
    try:
        import pwd

        return pwd.getpwuid(stat_result.st_uid).pw_name
    except (ImportError, KeyError):
        return None


def ingest_directory(path, rules: Sequence[TagRule] = ()) -> ManyValuedContext:
    """One object per regular file under path, ordered by relative path."""
    root = Path(path)
    if not root.is_dir():
        raise WorkspaceError(f"not a readable directory: {path}")

    files = sorted(
        (p for p in root.rglob("*") if p.is_file()),
        key=lambda p: p.relative_to(root).as_posix(),
    )
    objects: List[str] = []
    values: Dict[str, Dict[str, AttributeValue]] = {}
    for p in files:
        name = p.name
        if name in values:
            raise WorkspaceError(f"duplicate file name in ingestion run: {name!r}")
        st = p.stat()
        row: Dict[str, AttributeValue] = {
            "name": text(name),
            "size": integer(st.st_size),
            "created": AttributeValue("date", datetime.date.fromtimestamp(st.st_ctime)),
            "modified": AttributeValue("date", datetime.date.fromtimestamp(st.st_mtime)),
        }
        owner = _owner_name(st)
        if owner is not None:
            row["owner"] = text(owner)
        suffix = p.suffix.lstrip(".")
        if suffix:
            row["extension"] = text(suffix)

        segments = p.relative_to(root).parts[:-1]
        for rule in rules:
            try:
                row[rule.tag] = text(segments[rule.segment])
            except IndexError:
                log.warning(
                    "%s: no path segment %d for tag %r; value left missing",
                    p, rule.segment, rule.tag,
                )
        objects.append(name)
        values[name] = row

    sorts = list(FILE_SORTS) + [r.tag for r in rules if r.tag not in FILE_SORTS]
    return ManyValuedContext(objects, sorts, values)


def parse_records(text_content: str) -> List[Dict[str, tuple]]:
    """Raw records as ordered field -> (value text, line number) mappings."""
    records: List[Dict[str, tuple]] = []
    current: Dict[str, tuple] = {}
    last_field: Optional[str] = None
    for lineno, line in enumerate(text_content.splitlines(), start=1):
        if not line.strip():
            if current:
                records.append(current)
                current, last_field = {}, None
            continue
        if line[0].isspace():
            if last_field is None:
                raise RecordFormatError("continuation line without a field", lineno)
            value, first_line = current[last_field]
            current[last_field] = (f"{value} {line.strip()}", first_line)
            continue
        field, sep, value = line.partition(":")
        if not sep or not field.strip():
            raise RecordFormatError(f"expected 'field: value', got {line!r}", lineno)
        field = field.strip()
        if field in current:
            raise RecordFormatError(f"duplicate field {field!r} in record", lineno)
        current[field] = (value.strip(), lineno)
        last_field = field
    if current:
        records.append(current)
    return records


def ingest_records(source) -> ManyValuedContext:
    """Build a many-valued context from a record file or literal text.

    Sorts are the union of all fields in file order; a ``class`` field
    holds a colon-separated class path and stays text.
    """
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        content = Path(source).read_text(encoding="utf-8")
    elif isinstance(source, str):
        content = source
    else:
        content = Path(source).read_text(encoding="utf-8")

    raw = parse_records(content)
    sorts: List[str] = []
    objects: List[str] = []
    values: Dict[str, Dict[str, AttributeValue]] = {}
    for record in raw:
        first_line = min(line for _, line in record.values()) if record else 0
        ident = record.get("name", record.get("title"))
        if ident is None:
            raise RecordFormatError("record has neither a name nor a title", first_line)
        obj = ident[0]
        if obj in values:
            raise RecordFormatError(f"duplicate record identifier {obj!r}", ident[1])
        row: Dict[str, AttributeValue] = {}
        for field, (value, _) in record.items():
            if field not in sorts:
                sorts.append(field)
            row[field] = text(value) if field == "class" else parse_literal(value)
        objects.append(obj)
        values[obj] = row
    return ManyValuedContext(objects, sorts, values)
