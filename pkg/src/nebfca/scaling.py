"""Conceptual scaling: many-valued contexts become formal contexts.

Nominal scaling emits one binary attribute "tag=value" per observed value;
ordinal scaling emits cumulative attributes "tag<=cut" for integer and date
sorts. Missing values yield no incidence under any scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .context import FormalContext, ManyValuedContext, apposition
from .errors import FacetError, PlanError
from .values import DATE, INTEGER, AttributeValue

NOMINAL = "nominal"
ORDINAL = "ordinal"
SKIP = "skip"


@dataclass(frozen=True)
class SortScale:
    """Scale choice for one sort; ordinal cuts default to the observed values."""

    kind: str
    cuts: Optional[Tuple[AttributeValue, ...]] = None

    def __post_init__(self):
        if self.kind not in (NOMINAL, ORDINAL, SKIP):
            raise PlanError(f"unknown scale kind {self.kind!r}")
        if self.cuts is not None and self.kind != ORDINAL:
            raise PlanError("cut values apply only to ordinal scales")


@dataclass(frozen=True)
class ScalePlan:
    """Per-sort scale kinds; ``scale`` requires exactly one entry per sort."""

    scales: Mapping[str, SortScale] = field(default_factory=dict)

    @classmethod
    def nominal(cls, mv: ManyValuedContext) -> "ScalePlan":
        return cls({tag: SortScale(NOMINAL) for tag in mv.sorts})

    @classmethod
    def for_sorts(cls, sorts: Sequence[str], kind: str = NOMINAL) -> "ScalePlan":
        return cls({tag: SortScale(kind) for tag in sorts})

    def sorts(self) -> Tuple[str, ...]:
        return tuple(self.scales)


def _ordered_domain(mv: ManyValuedContext, tag: str) -> list:
    return sorted(mv.domains[tag], key=AttributeValue.sort_key)


def _resolve_cuts(mv: ManyValuedContext, tag: str, s: SortScale) -> list:
    cuts = list(s.cuts) if s.cuts is not None else _ordered_domain(mv, tag)
    kinds = {c.kind for c in cuts} | {v.kind for v in mv.domains[tag]}
    if not kinds <= {INTEGER, DATE} or len(kinds) > 1:
        raise PlanError(f"ordinal scale on {tag!r} requires a uniform integer or date sort")
    for a, b in zip(cuts, cuts[1:]):
        if not (a.le(b) and a != b):
            raise PlanError(f"ordinal cuts for {tag!r} must be strictly increasing")
    return cuts


def scale(mv: ManyValuedContext, plan: ScalePlan) -> FormalContext:
    """Scale every sort of mv according to plan.

    Attribute order follows sort order, then value order within a sort
    (lexicographic text, numeric integers, chronological dates).
    """
    planned = set(plan.scales)
    have = set(mv.sorts)
    if planned != have:
        missing = sorted(have - planned)
        extra = sorted(planned - have)
        raise PlanError(f"plan does not match context sorts (missing {missing}, extra {extra})")

    attrs: list = []
    pairs: list = []
    for tag in mv.sorts:
        s = plan.scales[tag]
        if s.kind == SKIP:
            continue
        if s.kind == NOMINAL:
            for v in _ordered_domain(mv, tag):
                name = f"{tag}={v.render()}"
                if name in attrs:
                    raise PlanError(f"scaled attribute name collision: {name!r}")
                attrs.append(name)
                for g in sorted(mv.index(tag).lookup(v), key=mv.objects.index):
                    pairs.append((g, name))
        else:
            for cut in _resolve_cuts(mv, tag, s):
                name = f"{tag}<={cut.render()}"
                attrs.append(name)
                for g in mv.objects:
                    v = mv.value(g, tag)
                    if not v.is_missing and v.le(cut):
                        pairs.append((g, name))
    return FormalContext(mv.objects, attrs, pairs)


def scale_facets(
    mv: ManyValuedContext,
    facets: Sequence[Tuple[str, ScalePlan]],
) -> FormalContext:
    """Scale disjoint facets independently, then appose them.

    Each facet plan covers a subset of the sorts; the facet label prefixes
    attribute names on collision. The union of facets may be a strict
    subset of the sorts (uncovered sorts are simply not scaled).
    """
    seen: Dict[str, str] = {}
    for label, plan in facets:
        for tag in plan.sorts():
            if tag not in mv.sorts:
                raise FacetError(f"facet {label!r} references unknown sort {tag!r}")
            if tag in seen:
                raise FacetError(f"sort {tag!r} appears in facets {seen[tag]!r} and {label!r}")
            seen[tag] = label

    result = FormalContext(mv.objects, (), ())
    for label, plan in facets:
        part = scale(mv.restrict_sorts(plan.sorts()), plan)
        taken = set(result.attributes)
        if any(m in taken for m in part.attributes):
            renames = {m: f"{label}/{m}" if m in taken else m for m in part.attributes}
            part = FormalContext(
                part.objects,
                [renames[m] for m in part.attributes],
                [(g, renames[m]) for g, m in part.incidence],
            )
        result = apposition(result, part)
    return result
