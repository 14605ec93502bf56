"""Conceptual knowledge systems: named views over a scaled context.

A view is a conceptual class defined by a scope (parent classes) and a
constructor (descriptive name). The system derives four relations over
classes, objects, and attributes: organization (class order),
distinguishing (class x attribute), instantiation (object x class), and
having (the scaled incidence). ``extend_context`` folds all four into one
formal context so that every view appears as a lattice node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .context import FormalContext, ManyValuedContext, derive_intent
from .errors import IdentifierError, ValidationError
from .query import DescriptiveName, evaluate, parse
from .scaling import ScalePlan, scale


@dataclass(frozen=True)
class View:
    """A named class: scope parents, a constructor query string, and a note."""

    name: str
    scope: Tuple[str, ...] = ()
    constructor: str = "*"
    note: str = ""

    def query(self) -> DescriptiveName:
        return parse(self.constructor)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    path: Tuple[str, ...] = ()

    def __str__(self):
        where = f" [{' -> '.join(self.path)}]" if self.path else ""
        return f"{self.kind}: {self.detail}{where}"


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(views: Sequence[View]) -> ValidationReport:
    """Structural checks: unique names, known scope parents, a single root,
    an acyclic scope graph, and parseable constructors."""
    out: List[Violation] = []
    names = [v.name for v in views]
    seen = set()
    for n in names:
        if n in seen:
            out.append(Violation("duplicate-name", f"view {n!r} defined twice"))
        seen.add(n)

    by_name = {v.name: v for v in views}
    for v in views:
        for parent in v.scope:
            if parent not in by_name:
                out.append(
                    Violation("unknown-scope", f"{v.name!r} scoped on missing {parent!r}")
                )
        try:
            v.query()
        except Exception as exc:  # syntax and type problems alike
            out.append(Violation("bad-constructor", f"{v.name!r}: {exc}"))

    roots = [v.name for v in views if not v.scope]
    if views and len(roots) != 1:
        out.append(
            Violation("root-count", f"expected exactly one scope-free view, got {roots}")
        )

    # cycle detection over the scope graph
    state: Dict[str, int] = {}
    stack: List[str] = []

    def visit(name: str) -> bool:
        state[name] = 1
        stack.append(name)
        for parent in by_name[name].scope:
            if parent not in by_name:
                continue
            s = state.get(parent)
            if s == 1:
                cycle = stack[stack.index(parent):] + [parent]
                out.append(Violation("cycle", "scope graph has a cycle", tuple(cycle)))
                stack.pop()
                state[name] = 2
                return False
            if s is None and not visit(parent):
                stack.pop()
                state[name] = 2
                return False
        stack.pop()
        state[name] = 2
        return True

    for v in views:
        if state.get(v.name) is None:
            if not visit(v.name):
                break

    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class IncidenceClosure:
    """The fully closed block relations of one knowledge system (one space).

    organization and distinguishing are over classes; instantiation and
    having are over objects. All four are pair sets, closed: organization
    is reflexive-transitive, instantiation and distinguishing follow the
    class order.
    """

    classes: Tuple[str, ...]
    objects: Tuple[str, ...]
    attributes: Tuple[str, ...]
    organization: FrozenSet[Tuple[str, str]]
    distinguishing: FrozenSet[Tuple[str, str]]
    instantiation: FrozenSet[Tuple[str, str]]
    having: FrozenSet[Tuple[str, str]]

    def matrix(self) -> List[List[bool]]:
        """Rows: classes then objects; columns: classes then attributes."""
        rows = []
        for c in self.classes:
            rows.append(
                [(c, d) in self.organization for d in self.classes]
                + [(c, a) in self.distinguishing for a in self.attributes]
            )
        for o in self.objects:
            rows.append(
                [(o, d) in self.instantiation for d in self.classes]
                + [(o, a) in self.having for a in self.attributes]
            )
        return rows

    def close(self) -> "IncidenceClosure":
        """Re-apply every closure rule; a closed system is a fixed point."""
        org = set(self.organization)
        for c in self.classes:
            org.add((c, c))
        changed = True
        while changed:
            changed = False
            for a, b in list(org):
                for b2, c in list(org):
                    if b == b2 and (a, c) not in org:
                        org.add((a, c))
                        changed = True
        inst = {
            (o, c2)
            for o, c1 in self.instantiation
            for c2 in self.classes
            if (c1, c2) in org
        }
        members: Dict[str, List[str]] = {c: [] for c in self.classes}
        for o, c in inst:
            members[c].append(o)
        dist = set()
        for c in self.classes:
            common = set(self.attributes)
            for o in members[c]:
                common &= {a for a in self.attributes if (o, a) in self.having}
            dist |= {(c, a) for a in common}
        return IncidenceClosure(
            self.classes,
            self.objects,
            self.attributes,
            frozenset(org),
            frozenset(dist),
            frozenset(inst),
            self.having,
        )


class ConceptualKnowledgeSystem:
    """Immutable snapshot: a scaled base context plus a validated view set.

    Containments are resolved at construction in topological scope order,
    so reads never recompute. View edits build a new snapshot.
    """

    def __init__(
        self,
        context: ManyValuedContext,
        plan: ScalePlan,
        views: Sequence[View],
    ):
        report = validate(views)
        if not report.ok:
            raise ValidationError(report)
        self.context = context
        self.plan = plan
        self.views: Tuple[View, ...] = tuple(views)
        self._by_name = {v.name: v for v in self.views}
        self.scaled = scale(context, plan)

        order = self._topological_order()
        self._containment: Dict[str, frozenset] = {}
        for name in order:
            v = self._by_name[name]
            if v.scope:
                scope_set = frozenset(context.objects)
                for parent in v.scope:
                    scope_set &= self._containment[parent]
            else:
                scope_set = frozenset(context.objects)
            self._containment[name] = evaluate(v.query(), context, scope_set)

        self._ancestors: Dict[str, frozenset] = {}
        for name in order:
            up = {name}
            for parent in self._by_name[name].scope:
                up |= self._ancestors[parent]
            self._ancestors[name] = frozenset(up)

    def _topological_order(self) -> List[str]:
        out: List[str] = []
        done: set = set()

        def visit(name: str):
            if name in done:
                return
            for parent in self._by_name[name].scope:
                visit(parent)
            done.add(name)
            out.append(name)

        for v in self.views:
            visit(v.name)
        return out

    # -- accessors -----------------------------------------------------------

    def view(self, name: str) -> View:
        v = self._by_name.get(name)
        if v is None:
            raise IdentifierError("view", name)
        return v

    def containment(self, name: str) -> frozenset:
        self.view(name)
        return self._containment[name]

    def ancestors(self, name: str) -> frozenset:
        """The view itself plus everything reachable through scope edges."""
        self.view(name)
        return self._ancestors[name]

    def class_names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.views)

    # -- derived relations -----------------------------------------------------

    def closure(self) -> IncidenceClosure:
        classes = self.class_names()
        organization = frozenset(
            (c, up) for c in classes for up in self._ancestors[c]
        )
        instantiation = frozenset(
            (o, c2)
            for c1 in classes
            for c2 in self._ancestors[c1]
            for o in self._containment[c1]
        )
        distinguishing = frozenset(
            (c, a)
            for c in classes
            for a in derive_intent(self.scaled, self._containment[c])
        )
        return IncidenceClosure(
            classes,
            self.context.objects,
            self.scaled.attributes,
            organization,
            distinguishing,
            instantiation,
            frozenset(self.scaled.incidence),
        )


def resolve_view(cks: ConceptualKnowledgeSystem, name: str) -> frozenset:
    """Containment of one view: its constructor evaluated within its scope."""
    return cks.containment(name)


def incidence_closure(cks: ConceptualKnowledgeSystem) -> IncidenceClosure:
    return cks.closure()


def extend_context(cks: ConceptualKnowledgeSystem) -> FormalContext:
    """One formal context holding the whole closed block matrix.

    Classes participate as both rows and columns, so views with equal
    object extents (such as a universal root above a universal class) still
    land on distinct lattice nodes.
    """
    closed = cks.closure()
    objects = list(closed.classes) + list(closed.objects)
    attributes = list(closed.classes) + list(closed.attributes)
    pairs = (
        list(closed.organization)
        + list(closed.distinguishing)
        + list(closed.instantiation)
        + list(closed.having)
    )
    return FormalContext(objects, attributes, pairs)
