"""Burmeister CXT interchange for formal contexts.

Layout, bit-exact: a "B" line, a blank line, the object count, the
attribute count, a blank line, one object name per line, one attribute
name per line, then one '.'/'X' row per object.
"""

from __future__ import annotations

from .context import FormalContext
from .errors import CxtFormatError


def export_cxt(ctx: FormalContext) -> str:
    lines = ["B", "", str(len(ctx.objects)), str(len(ctx.attributes)), ""]
    lines.extend(ctx.objects)
    lines.extend(ctx.attributes)
    for g in ctx.objects:
        row = ctx.row_mask(g)
        lines.append(
            "".join("X" if row >> i & 1 else "." for i in range(len(ctx.attributes)))
        )
    return "\n".join(lines) + "\n"


def import_cxt(text: str) -> FormalContext:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    pos = 0

    def take(expect: str = "") -> str:
        nonlocal pos
        if pos >= len(lines):
            raise CxtFormatError(f"unexpected end of file, wanted {expect}", pos + 1)
        pos += 1
        return lines[pos - 1]

    if take("the format marker 'B'") != "B":
        raise CxtFormatError("first line must be 'B'", 1)
    if take("a blank line") != "":
        raise CxtFormatError("second line must be blank", 2)
    try:
        n_objects = int(take("the object count"))
        n_attributes = int(take("the attribute count"))
    except ValueError:
        raise CxtFormatError("counts must be integers", pos)
    if n_objects < 0 or n_attributes < 0:
        raise CxtFormatError("counts must be non-negative", pos)
    if take("a blank line") != "":
        raise CxtFormatError("counts must be followed by a blank line", pos)

    objects = [take("an object name") for _ in range(n_objects)]
    attributes = [take("an attribute name") for _ in range(n_attributes)]
    pairs = []
    for g in objects:
        row = take("an incidence row")
        if len(row) != n_attributes:
            raise CxtFormatError(
                f"row for {g!r} has {len(row)} cells, wanted {n_attributes}", pos
            )
        for m, cell in zip(attributes, row):
            if cell == "X":
                pairs.append((g, m))
            elif cell != ".":
                raise CxtFormatError(f"cell must be '.' or 'X', got {cell!r}", pos)
    if pos != len(lines):
        raise CxtFormatError("trailing content after the incidence rows", pos + 1)
    return FormalContext(objects, attributes, pairs)
