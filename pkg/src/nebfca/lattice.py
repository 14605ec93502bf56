"""Concept enumeration, lattice order, reduced labeling, and context cleanup.

Concepts are enumerated by lectic-order closure (NextClosure) over the
smaller of the two sides, then re-sorted canonically: descending extent
size, ties broken by the extent's object names in context order. The cover
relation is the transitive reduction of extent inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .context import FormalConcept, FormalContext


def _lectic_closures(n: int, close) -> List[int]:
    """All closed sets of an n-element closure operator, as bit masks."""
    out = []
    a = close(0)
    full = (1 << n) - 1
    while True:
        out.append(a)
        if a == full:
            return out
        nxt = None
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                continue
            below = bit - 1
            b = close((a & below) | bit)
            if (b & below) == (a & below):
                nxt = b
                break
        if nxt is None:
            return out
        a = nxt


class ConceptLattice:
    """All concepts of a context, with covers, labels, and layer depths."""

    def __init__(self, ctx: FormalContext, concepts: Sequence[FormalConcept]):
        self.context = ctx
        self.concepts: Tuple[FormalConcept, ...] = tuple(concepts)
        self._extent_pos = {c.extent: i for i, c in enumerate(self.concepts)}
        self._extent_masks = [ctx.object_mask(c.extent) for c in self.concepts]
        self.covers: FrozenSet[Tuple[int, int]] = frozenset(self._transitive_reduction())
        self.top = self._extent_pos[frozenset(ctx.objects)] if self.concepts else -1
        full_intent = frozenset(ctx.attributes)
        self.bottom = next(
            i for i, c in enumerate(self.concepts) if c.intent == full_intent
        ) if self.concepts else -1
        self.upper: List[Tuple[int, ...]] = [() for _ in self.concepts]
        self.lower: List[Tuple[int, ...]] = [() for _ in self.concepts]
        ups: List[List[int]] = [[] for _ in self.concepts]
        downs: List[List[int]] = [[] for _ in self.concepts]
        for lo, hi in sorted(self.covers):
            ups[lo].append(hi)
            downs[hi].append(lo)
        self.upper = [tuple(u) for u in ups]
        self.lower = [tuple(d) for d in downs]
        self.layers = self._layer_depths()
        self.object_labels, self.attribute_labels = self._reduced_labels()

    # -- order structure ----------------------------------------------------

    def _transitive_reduction(self):
        masks = self._extent_masks
        n = len(masks)
        edges = []
        for i in range(n):
            mi = masks[i]
            above = [j for j in range(n) if masks[j] != mi and (mi & masks[j]) == mi]
            above.sort(key=lambda j: masks[j].bit_count())
            accepted: List[int] = []
            for j in above:
                mj = masks[j]
                if not any((masks[k] & mj) == masks[k] for k in accepted):
                    accepted.append(j)
                    edges.append((i, j))
        return edges

    def _layer_depths(self) -> Tuple[int, ...]:
        depth = [0] * len(self.concepts)
        order = sorted(range(len(self.concepts)), key=lambda i: -len(self.concepts[i].extent))
        for i in order:
            for hi in self.upper[i]:
                depth[i] = max(depth[i], depth[hi] + 1)
        return tuple(depth)

    def _reduced_labels(self):
        objs: Dict[int, List[str]] = {}
        attrs: Dict[int, List[str]] = {}
        ctx = self.context
        for g in ctx.objects:
            i = self.index_of_extent(ctx.objects_from_mask(ctx.extent_mask(ctx.row_mask(g))))
            objs.setdefault(i, []).append(g)
        for m in ctx.attributes:
            i = self.index_of_extent(ctx.attribute_objects(m))
            attrs.setdefault(i, []).append(m)
        return objs, attrs

    # -- lookups --------------------------------------------------------------

    def index_of_extent(self, extent: FrozenSet[str]) -> int:
        return self._extent_pos[frozenset(extent)]

    def join(self, i: int, j: int) -> int:
        """Least upper bound: closure of the extent union."""
        mask = self._extent_masks[i] | self._extent_masks[j]
        ctx = self.context
        closed = ctx.extent_mask(ctx.intent_mask(mask))
        return self.index_of_extent(ctx.objects_from_mask(closed))

    def meet(self, i: int, j: int) -> int:
        """Greatest lower bound: the extent intersection is already closed."""
        mask = self._extent_masks[i] & self._extent_masks[j]
        return self.index_of_extent(self.context.objects_from_mask(mask))

    def leq(self, i: int, j: int) -> bool:
        return (self._extent_masks[i] & self._extent_masks[j]) == self._extent_masks[i]

    def __len__(self):
        return len(self.concepts)

    def __repr__(self):
        return f"ConceptLattice({len(self.concepts)} concepts, {len(self.covers)} covers)"


def _canonical_sort(ctx: FormalContext, concepts) -> List[FormalConcept]:
    pos = {g: i for i, g in enumerate(ctx.objects)}

    def key(c: FormalConcept):
        ordered = tuple(sorted(c.extent, key=pos.__getitem__))
        return (-len(c.extent), ordered)

    return sorted(concepts, key=key)


def enumerate_concepts(ctx: FormalContext) -> ConceptLattice:
    """All formal concepts of ctx, exactly once, in canonical order.

    Runs the lectic closure enumeration over whichever side of the context
    is smaller; the other component of each concept is one derivation away.
    """
    concepts: List[FormalConcept] = []
    if len(ctx.attributes) <= len(ctx.objects):
        def close(mask: int) -> int:
            return ctx.intent_mask(ctx.extent_mask(mask))

        for intent in _lectic_closures(len(ctx.attributes), close):
            extent = ctx.extent_mask(intent)
            concepts.append(
                FormalConcept(ctx.objects_from_mask(extent), ctx.attributes_from_mask(intent))
            )
    else:
        def close(mask: int) -> int:
            return ctx.extent_mask(ctx.intent_mask(mask))

        for extent in _lectic_closures(len(ctx.objects), close):
            intent = ctx.intent_mask(extent)
            concepts.append(
                FormalConcept(ctx.objects_from_mask(extent), ctx.attributes_from_mask(intent))
            )
    return ConceptLattice(ctx, _canonical_sort(ctx, concepts))


def object_concept(lat: ConceptLattice, obj: str) -> int:
    """Index of the most specific concept whose extent contains obj."""
    ctx = lat.context
    extent = ctx.extent_mask(ctx.row_mask(obj))
    return lat.index_of_extent(ctx.objects_from_mask(extent))


def attribute_concept(lat: ConceptLattice, attr: str) -> int:
    """Index of the most general concept whose intent contains attr."""
    return lat.index_of_extent(lat.context.attribute_objects(attr))


def cover_relation(lat: ConceptLattice) -> FrozenSet[Tuple[int, int]]:
    """Hasse edges as (lower, upper) index pairs."""
    return lat.covers


@dataclass(frozen=True)
class MergeReport:
    """Groups merged by purification; the first name of each group is kept."""

    objects: Tuple[Tuple[str, ...], ...] = ()
    attributes: Tuple[Tuple[str, ...], ...] = ()

    @property
    def empty(self) -> bool:
        return not self.objects and not self.attributes


@dataclass(frozen=True)
class RemovalReport:
    """Join-/meet-reducible objects and attributes dropped by reduction."""

    objects: Tuple[str, ...] = ()
    attributes: Tuple[str, ...] = ()
    merged: MergeReport = field(default_factory=MergeReport)


def purify(ctx: FormalContext) -> Tuple[FormalContext, MergeReport]:
    """Merge objects with identical rows and attributes with identical columns."""
    row_groups: Dict[int, List[str]] = {}
    for g in ctx.objects:
        row_groups.setdefault(ctx.row_mask(g), []).append(g)
    kept_objects = [group[0] for group in row_groups.values()]
    merged_objects = tuple(tuple(g) for g in row_groups.values() if len(g) > 1)

    col_groups: Dict[FrozenSet[str], List[str]] = {}
    for m in ctx.attributes:
        key = ctx.attribute_objects(m) & frozenset(kept_objects)
        col_groups.setdefault(key, []).append(m)
    kept_attrs = [group[0] for group in col_groups.values()]
    merged_attrs = tuple(tuple(m) for m in col_groups.values() if len(m) > 1)

    return (
        ctx.subcontext(kept_objects, kept_attrs),
        MergeReport(merged_objects, merged_attrs),
    )


def reduce(ctx: FormalContext) -> Tuple[FormalContext, RemovalReport]:
    """Drop reducible objects and attributes; the lattice stays isomorphic.

    Purifies first, then removes every object whose object concept is
    join-reducible (not exactly one lower cover) and every attribute whose
    attribute concept is meet-reducible (not exactly one upper cover).
    """
    pure, merged = purify(ctx)
    lat = enumerate_concepts(pure)
    removed_objects = tuple(
        g for g in pure.objects if len(lat.lower[object_concept(lat, g)]) != 1
    )
    removed_attrs = tuple(
        m for m in pure.attributes if len(lat.upper[attribute_concept(lat, m)]) != 1
    )
    kept_objects = [g for g in pure.objects if g not in removed_objects]
    kept_attrs = [m for m in pure.attributes if m not in removed_attrs]
    return (
        pure.subcontext(kept_objects, kept_attrs),
        RemovalReport(removed_objects, removed_attrs, merged),
    )


def serialize_lattice(lat: ConceptLattice) -> dict:
    """JSON-ready structure: concepts with labels and layers, covers, extremes."""
    ctx = lat.context
    opos = {g: i for i, g in enumerate(ctx.objects)}
    apos = {m: i for i, m in enumerate(ctx.attributes)}
    concepts = []
    for i, c in enumerate(lat.concepts):
        concepts.append(
            {
                "extent": sorted(c.extent, key=opos.__getitem__),
                "intent": sorted(c.intent, key=apos.__getitem__),
                "object_labels": sorted(lat.object_labels.get(i, []), key=opos.__getitem__),
                "attribute_labels": sorted(lat.attribute_labels.get(i, []), key=apos.__getitem__),
                "layer": lat.layers[i],
            }
        )
    return {
        "concepts": concepts,
        "covers": sorted([lo, hi] for lo, hi in lat.covers),
        "top": lat.top,
        "bottom": lat.bottom,
    }
