"""Concept neighborhood browsing: seeds, pruning filters, and union views.

A session scales its facets, apposes them into one base context, and runs
a one-time global analysis (per-object and per-attribute summaries). Each
browse step extracts the local subcontext around a seed, builds its
lattice, and prunes what is reported:

* object seed g: attributes are restricted to g's own, ranked most
  specific first and cut at top_k; objects are everything sharing at least
  one retained attribute with g. Every concept of that subcontext contains
  g, so the lattice is the principal filter above g's object concept.
* attribute seed m: dually, objects are restricted to m's extent (ranked,
  cut at top_k) against all attributes, which yields the principal ideal
  below m's attribute concept.

The connectivity threshold drops concepts with small extents (object
seeds) or small intents (attribute seeds); at the default 1 nothing is
dropped, because every reported concept carries the seed on that side. A
ball filter keeps only items within a similarity radius of the seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .context import FormalContext, ManyValuedContext
from .errors import FilterError, IdentifierError, SessionError
from .lattice import ConceptLattice, enumerate_concepts
from .scaling import ScalePlan, scale_facets

OBJECT = "object"
ATTRIBUTE = "attribute"


@dataclass(frozen=True)
class Seed:
    kind: str
    name: str

    def __post_init__(self):
        if self.kind not in (OBJECT, ATTRIBUTE):
            raise ValueError(f"seed kind must be object or attribute, got {self.kind!r}")

    @classmethod
    def object(cls, name: str) -> "Seed":
        return cls(OBJECT, name)

    @classmethod
    def attribute(cls, name: str) -> "Seed":
        return cls(ATTRIBUTE, name)


@dataclass(frozen=True)
class NeighborhoodFilters:
    """threshold: minimum reported size on the seed's side; top_k: how many
    ranked items to retain; ball: (metric id, radius) around the seed."""

    threshold: int = 1
    top_k: Optional[int] = None
    ball: Optional[Tuple[str, float]] = None


@dataclass(frozen=True)
class Neighborhood:
    seed: Seed
    subcontext: FormalContext
    lattice: ConceptLattice
    filters: NeighborhoodFilters
    reported: Tuple[int, ...]

    def reported_concepts(self):
        return [self.lattice.concepts[i] for i in self.reported]


def _jaccard(a_mask: int, b_mask: int) -> float:
    union = (a_mask | b_mask).bit_count()
    if union == 0:
        return 1.0
    return (a_mask & b_mask).bit_count() / union


_METRICS = {"jaccard": _jaccard}


class BrowseSession:
    """Single-browser state: the apposed base context plus append-only history."""

    def __init__(self, mv: ManyValuedContext, facets: Sequence[Tuple[str, ScalePlan]]):
        self.source = mv
        self.context = scale_facets(mv, facets)
        self.base_lattice = enumerate_concepts(self.context)
        self.object_summary = self._object_summaries()
        self.attribute_summary = self._attribute_summaries()
        self.history: list = []
        self.current = -1
        self._made: list = []

    def _object_summaries(self) -> Dict[str, dict]:
        out = {}
        for g in self.context.objects:
            count = sum(1 for c in self.base_lattice.concepts if g in c.extent)
            out[g] = {
                "degree": self.context.row_mask(g).bit_count(),
                "concepts": count,
            }
        return out

    def _attribute_summaries(self) -> Dict[str, dict]:
        out = {}
        for m in self.context.attributes:
            count = sum(1 for c in self.base_lattice.concepts if m in c.intent)
            out[m] = {
                "degree": self.context.col_mask(m).bit_count(),
                "concepts": count,
            }
        return out

    # -- similarity ------------------------------------------------------------

    def similarity(self, a: str, b: str, metric: str = "jaccard") -> float:
        fn = _METRICS.get(metric)
        if fn is None:
            raise IdentifierError("metric", metric)
        return fn(self.context.row_mask(a), self.context.row_mask(b))

    def _attribute_similarity(self, a: str, b: str, metric: str) -> float:
        fn = _METRICS.get(metric)
        if fn is None:
            raise IdentifierError("metric", metric)
        return fn(self.context.col_mask(a), self.context.col_mask(b))

    # -- neighborhoods -----------------------------------------------------------

    def neighborhood(
        self, seed: Seed, filters: NeighborhoodFilters = NeighborhoodFilters()
    ) -> Neighborhood:
        if filters.threshold < 1:
            raise FilterError(f"threshold must be positive, got {filters.threshold}")
        if filters.top_k is not None and filters.top_k < 0:
            raise FilterError(f"top_k must be non-negative, got {filters.top_k}")
        if filters.ball is not None:
            metric, radius = filters.ball
            if metric not in _METRICS:
                raise IdentifierError("metric", metric)
            if radius < 0:
                raise FilterError(f"ball radius must be non-negative, got {radius}")

        if seed.kind == OBJECT:
            hood = self._object_neighborhood(seed, filters)
        else:
            hood = self._attribute_neighborhood(seed, filters)
        self.history.append((seed, hood))
        self.current = len(self.history) - 1
        self._made.append(hood)
        return hood

    def _object_neighborhood(self, seed: Seed, filters: NeighborhoodFilters):
        ctx = self.context
        g = seed.name
        row = ctx.row_mask(g)  # raises IdentifierError for unknown objects

        retained = sorted(
            ctx.attributes_from_mask(row),
            key=lambda m: (ctx.col_mask(m).bit_count(), ctx.attributes.index(m)),
        )
        if filters.top_k is not None:
            retained = retained[: filters.top_k]
        retained_mask = ctx.attribute_mask(retained)

        objects = [
            h for h in ctx.objects if h == g or ctx.row_mask(h) & retained_mask
        ]
        if filters.ball is not None:
            metric, radius = filters.ball
            objects = [
                h
                for h in objects
                if h == g or 1.0 - self.similarity(g, h, metric) <= radius
            ]
        ordered_attrs = [m for m in ctx.attributes if m in set(retained)]
        sub = ctx.subcontext(objects, ordered_attrs)
        lat = enumerate_concepts(sub)
        reported = tuple(
            i
            for i, c in enumerate(lat.concepts)
            if len(c.extent) >= filters.threshold
        )
        return Neighborhood(seed, sub, lat, filters, reported)

    def _attribute_neighborhood(self, seed: Seed, filters: NeighborhoodFilters):
        ctx = self.context
        m = seed.name
        col = ctx.col_mask(m)

        retained = sorted(
            ctx.objects_from_mask(col),
            key=lambda h: (ctx.row_mask(h).bit_count(), ctx.objects.index(h)),
        )
        if filters.top_k is not None:
            retained = retained[: filters.top_k]

        attrs = list(ctx.attributes)
        if filters.ball is not None:
            metric, radius = filters.ball
            attrs = [
                n
                for n in attrs
                if n == m or 1.0 - self._attribute_similarity(m, n, metric) <= radius
            ]
        ordered_objs = [h for h in ctx.objects if h in set(retained)]
        sub = ctx.subcontext(ordered_objs, attrs)
        lat = enumerate_concepts(sub)
        reported = tuple(
            i
            for i, c in enumerate(lat.concepts)
            if len(c.intent) >= filters.threshold
        )
        return Neighborhood(seed, sub, lat, filters, reported)

    def union(self, old: Neighborhood, new: Neighborhood) -> Neighborhood:
        mine = self._made
        if not any(h is old for h in mine) or not any(h is new for h in mine):
            raise SessionError("both neighborhoods must come from this session")
        ctx = self.context
        objs = set(old.subcontext.objects) | set(new.subcontext.objects)
        attrs = set(old.subcontext.attributes) | set(new.subcontext.attributes)
        sub = ctx.subcontext(
            [g for g in ctx.objects if g in objs],
            [m for m in ctx.attributes if m in attrs],
        )
        lat = enumerate_concepts(sub)
        hood = Neighborhood(
            new.seed, sub, lat, NeighborhoodFilters(), tuple(range(len(lat)))
        )
        self._made.append(hood)
        return hood


def init_session(
    mv: ManyValuedContext, facets: Sequence[Tuple[str, ScalePlan]]
) -> BrowseSession:
    """Scale the facets, appose them, and run the one-time global analysis."""
    return BrowseSession(mv, facets)


def neighborhood(
    session: BrowseSession, seed: Seed, filters: NeighborhoodFilters = NeighborhoodFilters()
) -> Neighborhood:
    return session.neighborhood(seed, filters)


def union_neighborhood(
    session: BrowseSession, old: Neighborhood, new: Neighborhood
) -> Neighborhood:
    return session.union(old, new)


def similarity(session: BrowseSession, a: str, b: str, metric: str = "jaccard") -> float:
    return session.similarity(a, b, metric)


def serialize_neighborhood(hood: Neighborhood) -> dict:
    """JSON-ready view of the reported concepts only.

    Cover edges and layer depths are recomputed over the reported subset,
    so a threshold change yields a coherent smaller diagram.
    """
    lat = hood.lattice
    ctx = hood.subcontext
    opos = {g: i for i, g in enumerate(ctx.objects)}
    apos = {m: i for i, m in enumerate(ctx.attributes)}
    reported = list(hood.reported)
    extents = [lat.concepts[i].extent for i in reported]

    below = [
        [j for j in range(len(reported)) if i != j and extents[j] < extents[i]]
        for i in range(len(reported))
    ]
    covers = []
    for i in range(len(reported)):
        for j in below[i]:
            if not any(extents[j] < extents[k] and extents[k] < extents[i] for k in below[i]):
                covers.append([j, i])

    layers = [0] * len(reported)
    for i in sorted(range(len(reported)), key=lambda i: -len(extents[i])):
        for j, k in covers:
            if k == i:
                layers[j] = max(layers[j], layers[i] + 1)

    concepts = []
    for pos, i in enumerate(reported):
        c = lat.concepts[i]
        concepts.append(
            {
                "extent": sorted(c.extent, key=opos.__getitem__),
                "intent": sorted(c.intent, key=apos.__getitem__),
                "object_labels": sorted(lat.object_labels.get(i, []), key=opos.__getitem__),
                "attribute_labels": sorted(
                    lat.attribute_labels.get(i, []), key=apos.__getitem__
                ),
                "layer": layers[pos],
            }
        )
    return {
        "seed": {hood.seed.kind: hood.seed.name},
        "filters": {
            "threshold": hood.filters.threshold,
            "top_k": hood.filters.top_k,
            "ball": list(hood.filters.ball) if hood.filters.ball else None,
        },
        "concepts": concepts,
        "covers": sorted(covers),
    }
