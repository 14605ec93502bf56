"""Constrained sums of knowledge systems: sharing links and derived blocks.

Two or more spaces are composed by directed links that scope a class of one
space on a class of another. Composition leaves every per-space block
untouched and derives cross-instantiation two ways: objects flow up through
outgoing links of classes they instantiate, and a linked view's constructor
re-filters the objects of its link parents. Identifiers are qualified as
"space/name" wherever spaces meet.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Sequence, Tuple

from .cks import ConceptualKnowledgeSystem
from .errors import CycleError, IdentifierError
from .query import DescriptiveName, evaluate

Qualified = Tuple[str, str]  # (space id, local name)


def qualify(space: str, name: str) -> str:
    return f"{space}/{name}"


@dataclass(frozen=True)
class SharingLink:
    """``source`` is scoped on ``target``; the two lie in different spaces."""

    source: Qualified
    target: Qualified

    def __post_init__(self):
        if self.source[0] == self.target[0]:
            raise ValueError("a sharing link must connect two different spaces")

    @classmethod
    def of(cls, source: str, target: str) -> "SharingLink":
        """Build from "space/class" strings (the serialized form)."""
        return cls(_split(source), _split(target))


def _split(qualified: str) -> Qualified:
    space, sep, name = qualified.partition("/")
    if not sep or not space or not name:
        raise ValueError(f"expected 'space/class', got {qualified!r}")
    return (space, name)


def _evaluate_in_space(
    q: DescriptiveName, cks: ConceptualKnowledgeSystem, scope: frozenset
) -> frozenset:
    """Evaluate against one space; a tag absent from its sorts matches nothing."""
    if not q.is_all and any(p.tag not in cks.context.sorts for p in q.terms):
        return frozenset()
    return evaluate(q, cks.context, scope)


class SharedSpace:
    """Immutable composition of knowledge systems joined by sharing links."""

    def __init__(
        self,
        spaces: Sequence[Tuple[str, ConceptualKnowledgeSystem]],
        links: Sequence[SharingLink],
    ):
        ids = [sid for sid, _ in spaces]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate space ids in {ids}")
        self.order: Tuple[str, ...] = tuple(ids)
        self.spaces: Mapping[str, ConceptualKnowledgeSystem] = dict(spaces)
        self.links: Tuple[SharingLink, ...] = tuple(links)

        for link in self.links:
            for space, cls in (link.source, link.target):
                if space not in self.spaces:
                    raise IdentifierError("space", space)
                self.spaces[space].view(cls)  # raises on a dangling class

        self._check_acyclic()
        self._closures = {sid: cks.closure() for sid, cks in self.spaces.items()}
        self._containment = self._resolve_all()
        self.cross_instantiation = self._derive_cross_blocks()

    # -- structural checks -----------------------------------------------------

    def _scope_edges(self) -> Dict[Qualified, List[Qualified]]:
        edges: Dict[Qualified, List[Qualified]] = {}
        for sid, cks in self.spaces.items():
            for v in cks.views:
                node = (sid, v.name)
                edges.setdefault(node, [])
                for parent in v.scope:
                    edges[node].append((sid, parent))
        for link in self.links:
            edges.setdefault(link.source, []).append(link.target)
            edges.setdefault(link.target, [])
        return edges

    def _check_acyclic(self):
        edges = self._scope_edges()
        state: Dict[Qualified, int] = {}
        stack: List[Qualified] = []

        def visit(node: Qualified):
            state[node] = 1
            stack.append(node)
            for nxt in edges.get(node, ()):
                s = state.get(nxt)
                if s == 1:
                    cycle = stack[stack.index(nxt):] + [nxt]
                    raise CycleError([qualify(*n) for n in cycle])
                if s is None:
                    visit(nxt)
            stack.pop()
            state[node] = 2

        for node in edges:
            if state.get(node) is None:
                visit(node)

    # -- cross-space resolution --------------------------------------------------

    def _resolve_all(self) -> Dict[Qualified, FrozenSet[Qualified]]:
        edges = self._scope_edges()
        containment: Dict[Qualified, FrozenSet[Qualified]] = {}
        link_parents: Dict[Qualified, List[Qualified]] = {}
        for link in self.links:
            link_parents.setdefault(link.source, []).append(link.target)

        def resolve(node: Qualified) -> FrozenSet[Qualified]:
            if node in containment:
                return containment[node]
            sid, name = node
            cks = self.spaces[sid]
            view = cks.view(name)

            own = frozenset((sid, g) for g in cks.context.objects)
            if view.scope:
                scope = own
                for parent in view.scope:
                    scope &= resolve((sid, parent))
            else:
                scope = own
            for target in link_parents.get(node, ()):
                scope |= resolve(target)

            result: set = set()
            by_space: Dict[str, set] = {}
            for space, obj in scope:
                by_space.setdefault(space, set()).add(obj)
            for space, objs in by_space.items():
                got = _evaluate_in_space(view.query(), self.spaces[space], frozenset(objs))
                result |= {(space, g) for g in got}
            containment[node] = frozenset(result)
            return containment[node]

        for node in sorted(edges, key=lambda n: (self.order.index(n[0]), n[1])):
            resolve(node)
        return containment

    def _derive_cross_blocks(self) -> Dict[Tuple[str, str], FrozenSet[Tuple[str, str]]]:
        blocks: Dict[Tuple[str, str], set] = {
            (i, j): set() for i in self.order for j in self.order if i != j
        }
        # objects flowing up through their own space's outgoing links
        for link in self.links:
            i, c1 = link.source
            j, c2 = link.target
            org_j = self._closures[j].organization
            uppers = [c for (lo, c) in org_j if lo == c2]
            for o, c in self._closures[i].instantiation:
                if c == c1:
                    for up in uppers:
                        blocks[(i, j)].add((o, up))
        # foreign objects selected by a linked view's constructor
        for (j, name), members in self._containment.items():
            org_j = self._closures[j].organization
            uppers = [c for (lo, c) in org_j if lo == name]
            for space, obj in members:
                if space != j:
                    for up in uppers:
                        blocks[(space, j)].add((obj, up))
        return {k: frozenset(v) for k, v in blocks.items()}

    # -- accessors ---------------------------------------------------------------

    def space(self, sid: str) -> ConceptualKnowledgeSystem:
        if sid not in self.spaces:
            raise IdentifierError("space", sid)
        return self.spaces[sid]

    def closure_of(self, sid: str):
        self.space(sid)
        return self._closures[sid]

    def containment_across(self, sid: str, view: str) -> FrozenSet[Qualified]:
        self.space(sid).view(view)
        return self._containment[(sid, view)]


def compose(
    spaces: Sequence[Tuple[str, ConceptualKnowledgeSystem]],
    links: Sequence[SharingLink],
) -> SharedSpace:
    """Join spaces through links; per-space blocks are carried unchanged."""
    return SharedSpace(spaces, links)


def resolve_across(shared: SharedSpace, sid: str, view: str) -> frozenset:
    """Containment of a view with linked parents' objects in scope.

    Returns qualified "space/object" identifiers, since the result may
    span spaces.
    """
    return frozenset(qualify(*q) for q in shared.containment_across(sid, view))


@dataclass(frozen=True)
class BlockMatrix:
    """Boolean matrix over all spaces: class rows then object rows, against
    class columns then one pooled attribute block."""

    row_labels: Tuple[str, ...]
    col_labels: Tuple[str, ...]
    rows: Tuple[Tuple[bool, ...], ...]
    class_counts: Tuple[int, ...]
    object_counts: Tuple[int, ...]
    attribute_count: int


def block_matrix(shared: SharedSpace) -> BlockMatrix:
    order = shared.order
    closures = {sid: shared.closure_of(sid) for sid in order}

    class_cols: List[Qualified] = [
        (sid, c) for sid in order for c in closures[sid].classes
    ]
    attr_owner: List[Qualified] = [
        (sid, a) for sid in order for a in closures[sid].attributes
    ]
    seen: Dict[str, int] = {}
    for _, a in attr_owner:
        seen[a] = seen.get(a, 0) + 1
    attr_labels = [
        qualify(sid, a) if seen[a] > 1 else a for sid, a in attr_owner
    ]

    links = {(l.source, l.target) for l in shared.links}
    row_labels: List[str] = []
    rows: List[Tuple[bool, ...]] = []

    def class_row(sid: str, c: str) -> Tuple[bool, ...]:
        closed = closures[sid]
        out = []
        for tid, d in class_cols:
            if tid == sid:
                out.append((c, d) in closed.organization)
            else:
                out.append(((sid, c), (tid, d)) in links)
        for tid, a in attr_owner:
            out.append(tid == sid and (c, a) in closed.distinguishing)
        return tuple(out)

    def object_row(sid: str, o: str) -> Tuple[bool, ...]:
        closed = closures[sid]
        out = []
        for tid, d in class_cols:
            if tid == sid:
                out.append((o, d) in closed.instantiation)
            else:
                out.append((o, d) in shared.cross_instantiation[(sid, tid)])
        for tid, a in attr_owner:
            out.append(tid == sid and (o, a) in closed.having)
        return tuple(out)

    for sid in order:
        for c in closures[sid].classes:
            row_labels.append(qualify(sid, c))
            rows.append(class_row(sid, c))
    for sid in order:
        for o in closures[sid].objects:
            row_labels.append(qualify(sid, o))
            rows.append(object_row(sid, o))

    return BlockMatrix(
        row_labels=tuple(row_labels),
        col_labels=tuple(qualify(*qc) for qc in class_cols) + tuple(attr_labels),
        rows=tuple(rows),
        class_counts=tuple(len(closures[sid].classes) for sid in order),
        object_counts=tuple(len(closures[sid].objects) for sid in order),
        attribute_count=len(attr_owner),
    )
