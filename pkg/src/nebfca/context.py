"""Many-valued and formal contexts with Galois derivation operators.

A many-valued context records typed metadata per (object, tag) pair; a
formal context is the scaled, binary form. Incidence is kept as row and
column bit-vectors (Python ints), so both derivations are bit-AND folds.
All types are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import AppositionError, IdentifierError
from .values import MISSING, AttributeValue


def _check_identifier(kind: str, name: str) -> None:
    if not isinstance(name, str) or name == "":
        raise ValueError(f"{kind} identifier must be a non-empty string")
    if any(ord(c) < 32 or ord(c) == 127 for c in name):
        raise ValueError(f"{kind} identifier {name!r} contains control characters")


def _check_unique(kind: str, names: Sequence[str]) -> None:
    seen = set()
    for n in names:
        _check_identifier(kind, n)
        if n in seen:
            raise ValueError(f"duplicate {kind} identifier {n!r}")
        seen.add(n)


def _mask_to_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class IndexRelation:
    """Inverse of one information function: value -> set of object ids."""

    tag: str
    postings: Mapping[AttributeValue, frozenset]

    def lookup(self, value: AttributeValue) -> frozenset:
        return self.postings.get(value, frozenset())


class ManyValuedContext:
    """Objects x sorted tags with typed values (the raw metadata form).

    Every (object, tag) pair has exactly one value, possibly MISSING.
    ``domains[tag]`` is exactly the set of non-missing values observed in
    that column.
    """

    def __init__(
        self,
        objects: Sequence[str],
        sorts: Sequence[str],
        values: Mapping[str, Mapping[str, AttributeValue]],
    ):
        _check_unique("object", objects)
        _check_unique("sort", sorts)
        self.objects: Tuple[str, ...] = tuple(objects)
        self.sorts: Tuple[str, ...] = tuple(sorts)
        self._obj_index = {g: i for i, g in enumerate(self.objects)}
        self._sort_index = {a: i for i, a in enumerate(self.sorts)}

        cells: Dict[Tuple[int, int], AttributeValue] = {}
        for g, row in values.items():
            if g not in self._obj_index:
                raise IdentifierError("object", g)
            for tag, v in row.items():
                if tag not in self._sort_index:
                    raise IdentifierError("sort", tag)
                if not isinstance(v, AttributeValue):
                    raise TypeError(f"value for ({g!r}, {tag!r}) must be AttributeValue")
                cells[(self._obj_index[g], self._sort_index[tag])] = v
        self._cells = cells

        domains: Dict[str, frozenset] = {}
        indexes: Dict[str, IndexRelation] = {}
        for tag in self.sorts:
            postings: Dict[AttributeValue, set] = {}
            for g in self.objects:
                v = self.value(g, tag)
                if not v.is_missing:
                    postings.setdefault(v, set()).add(g)
            domains[tag] = frozenset(postings)
            indexes[tag] = IndexRelation(tag, {v: frozenset(s) for v, s in postings.items()})
        self.domains = domains
        self._indexes = indexes

    def value(self, obj: str, tag: str) -> AttributeValue:
        gi = self._obj_index.get(obj)
        if gi is None:
            raise IdentifierError("object", obj)
        ti = self._sort_index.get(tag)
        if ti is None:
            raise IdentifierError("sort", tag)
        return self._cells.get((gi, ti), MISSING)

    def row(self, obj: str) -> Dict[str, AttributeValue]:
        return {tag: self.value(obj, tag) for tag in self.sorts}

    def index(self, tag: str) -> IndexRelation:
        if tag not in self._sort_index:
            raise IdentifierError("tag", tag)
        return self._indexes[tag]

    def has_object(self, obj: str) -> bool:
        return obj in self._obj_index

    def restrict_sorts(self, sorts: Sequence[str]) -> "ManyValuedContext":
        """Same objects, a subset of sorts (used by per-facet scaling)."""
        for tag in sorts:
            if tag not in self._sort_index:
                raise IdentifierError("sort", tag)
        vals = {
            g: {t: self.value(g, t) for t in sorts if not self.value(g, t).is_missing}
            for g in self.objects
        }
        return ManyValuedContext(self.objects, tuple(sorts), vals)

    def __eq__(self, other):
        if not isinstance(other, ManyValuedContext):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.sorts == other.sorts
            and {k: v for k, v in self._cells.items() if not v.is_missing}
            == {k: v for k, v in other._cells.items() if not v.is_missing}
        )

    def __repr__(self):
        return f"ManyValuedContext({len(self.objects)} objects, {len(self.sorts)} sorts)"


def build_index(mv: ManyValuedContext, tag: str) -> IndexRelation:
    """Index relation for one tag: postings[v] = {g | value(g, tag) = v}."""
    return mv.index(tag)


class FormalContext:
    """Objects x binary attributes with an incidence relation.

    Incidence is stored both row-wise (per-object attribute mask) and
    column-wise (per-attribute object mask); the two are kept consistent
    by construction. Object and attribute order is insertion order and is
    canonical for all derived output.
    """

    def __init__(
        self,
        objects: Sequence[str],
        attributes: Sequence[str],
        incidence: Iterable[Tuple[str, str]],
    ):
        _check_unique("object", objects)
        _check_unique("attribute", attributes)
        self.objects: Tuple[str, ...] = tuple(objects)
        self.attributes: Tuple[str, ...] = tuple(attributes)
        self._obj_index = {g: i for i, g in enumerate(self.objects)}
        self._attr_index = {m: i for i, m in enumerate(self.attributes)}
        rows = [0] * len(self.objects)
        cols = [0] * len(self.attributes)
        for g, m in incidence:
            gi = self._obj_index.get(g)
            if gi is None:
                raise IdentifierError("object", g)
            mi = self._attr_index.get(m)
            if mi is None:
                raise IdentifierError("attribute", m)
            rows[gi] |= 1 << mi
            cols[mi] |= 1 << gi
        self._rows: Tuple[int, ...] = tuple(rows)
        self._cols: Tuple[int, ...] = tuple(cols)

    @classmethod
    def from_masks(cls, objects, attributes, rows: Sequence[int]) -> "FormalContext":
        ctx = cls.__new__(cls)
        _check_unique("object", objects)
        _check_unique("attribute", attributes)
        ctx.objects = tuple(objects)
        ctx.attributes = tuple(attributes)
        ctx._obj_index = {g: i for i, g in enumerate(ctx.objects)}
        ctx._attr_index = {m: i for i, m in enumerate(ctx.attributes)}
        ctx._rows = tuple(rows)
        cols = [0] * len(ctx.attributes)
        for gi, row in enumerate(ctx._rows):
            for mi in _mask_to_indices(row):
                cols[mi] |= 1 << gi
        ctx._cols = tuple(cols)
        return ctx

    # -- mask plumbing ----------------------------------------------------

    def object_mask(self, objs: Iterable[str]) -> int:
        mask = 0
        for g in objs:
            gi = self._obj_index.get(g)
            if gi is None:
                raise IdentifierError("object", g)
            mask |= 1 << gi
        return mask

    def attribute_mask(self, attrs: Iterable[str]) -> int:
        mask = 0
        for m in attrs:
            mi = self._attr_index.get(m)
            if mi is None:
                raise IdentifierError("attribute", m)
            mask |= 1 << mi
        return mask

    def objects_from_mask(self, mask: int) -> frozenset:
        return frozenset(self.objects[i] for i in _mask_to_indices(mask))

    def attributes_from_mask(self, mask: int) -> frozenset:
        return frozenset(self.attributes[i] for i in _mask_to_indices(mask))

    def row_mask(self, obj: str) -> int:
        gi = self._obj_index.get(obj)
        if gi is None:
            raise IdentifierError("object", obj)
        return self._rows[gi]

    def col_mask(self, attr: str) -> int:
        mi = self._attr_index.get(attr)
        if mi is None:
            raise IdentifierError("attribute", attr)
        return self._cols[mi]

    def intent_mask(self, obj_mask: int) -> int:
        out = (1 << len(self.attributes)) - 1
        for gi in _mask_to_indices(obj_mask):
            out &= self._rows[gi]
        return out

    def extent_mask(self, attr_mask: int) -> int:
        out = (1 << len(self.objects)) - 1
        for mi in _mask_to_indices(attr_mask):
            out &= self._cols[mi]
        return out

    # -- public relation views --------------------------------------------

    @property
    def incidence(self) -> frozenset:
        return frozenset(
            (self.objects[gi], self.attributes[mi])
            for gi, row in enumerate(self._rows)
            for mi in _mask_to_indices(row)
        )

    def has(self, obj: str, attr: str) -> bool:
        mi = self._attr_index.get(attr)
        if mi is None:
            raise IdentifierError("attribute", attr)
        return bool(self.row_mask(obj) >> mi & 1)

    def object_attributes(self, obj: str) -> frozenset:
        return self.attributes_from_mask(self.row_mask(obj))

    def attribute_objects(self, attr: str) -> frozenset:
        return self.objects_from_mask(self.col_mask(attr))

    def subcontext(self, objects: Sequence[str], attributes: Sequence[str]) -> "FormalContext":
        """Restriction to the given objects and attributes, incidence inherited."""
        attr_mask = self.attribute_mask(attributes)
        pairs = []
        for g in objects:
            row = self.row_mask(g) & attr_mask
            for mi in _mask_to_indices(row):
                pairs.append((g, self.attributes[mi]))
        return FormalContext(objects, attributes, pairs)

    def __eq__(self, other):
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.attributes == other.attributes
            and self._rows == other._rows
        )

    def __repr__(self):
        n = sum(r.bit_count() for r in self._rows)
        return f"FormalContext({len(self.objects)}x{len(self.attributes)}, {n} incidences)"


@dataclass(frozen=True)
class FormalConcept:
    """Extent/intent pair; each side is the derivation of the other."""

    extent: frozenset
    intent: frozenset


def derive_intent(ctx: FormalContext, objs: Iterable[str]) -> frozenset:
    """Attributes common to every object in objs; all of M for the empty set."""
    return ctx.attributes_from_mask(ctx.intent_mask(ctx.object_mask(objs)))


def derive_extent(ctx: FormalContext, attrs: Iterable[str]) -> frozenset:
    """Objects carrying every attribute in attrs; all of G for the empty set."""
    return ctx.objects_from_mask(ctx.extent_mask(ctx.attribute_mask(attrs)))


def close_objects(ctx: FormalContext, objs: Iterable[str]) -> FormalConcept:
    """Concept generated by an object set: (objs'', objs')."""
    intent = ctx.intent_mask(ctx.object_mask(objs))
    extent = ctx.extent_mask(intent)
    return FormalConcept(ctx.objects_from_mask(extent), ctx.attributes_from_mask(intent))


def close_attributes(ctx: FormalContext, attrs: Iterable[str]) -> FormalConcept:
    """Concept generated by an attribute set: (attrs', attrs'')."""
    extent = ctx.extent_mask(ctx.attribute_mask(attrs))
    intent = ctx.intent_mask(extent)
    return FormalConcept(ctx.objects_from_mask(extent), ctx.attributes_from_mask(intent))


def apposition(
    left: FormalContext,
    right: FormalContext,
    left_label: Optional[str] = None,
    right_label: Optional[str] = None,
) -> FormalContext:
    """Side-by-side combination of two contexts over one object set.

    Object order is taken from the left context. Attribute-name collisions
    are renamed by prefixing with the caller-supplied facet labels; without
    labels a collision is an error.
    """
    ls, rs = frozenset(left.objects), frozenset(right.objects)
    if ls != rs:
        raise AppositionError(ls - rs, rs - ls)

    common = set(left.attributes) & set(right.attributes)
    if common and (left_label is None or right_label is None):
        raise ValueError(
            f"attribute collision {sorted(common)} requires facet labels for renaming"
        )

    def rename(name: str, label: Optional[str]) -> str:
        return f"{label}/{name}" if name in common else name

    attrs = [rename(m, left_label) for m in left.attributes]
    attrs += [rename(m, right_label) for m in right.attributes]
    pairs = [(g, rename(m, left_label)) for g, m in left.incidence]
    pairs += [(g, rename(m, right_label)) for g, m in right.incidence]
    return FormalContext(left.objects, attrs, pairs)
