"""The workspace document: named contexts, plans, views, links, and notes.

One JSON file with stable key ordering holds everything; saving is
canonical, so round-trips are byte-exact. No database: the data is
desk-scale and fixtures should diff cleanly.
"""

from __future__ import annotations

import datetime
import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Mapping, Tuple

from .cks import ConceptualKnowledgeSystem, View
from .context import FormalContext, ManyValuedContext
from .errors import WorkspaceError
from .scaling import ScalePlan, SortScale, scale
from .sharing import SharedSpace, SharingLink, compose, qualify
from .values import DATE, INTEGER, MISSING, TEXT, AttributeValue

ENV_VAR = "NEBFCA_WORKSPACE"
DEFAULT_PATH = "workspace.json"
FORMAT_VERSION = 1


def default_path() -> str:
    return os.environ.get(ENV_VAR, DEFAULT_PATH)


def encode_value(v: AttributeValue):
    if v.is_missing:
        return None
    if v.kind == TEXT:
        return v.value
    if v.kind == INTEGER:
        return v.value
    return {"date": v.value.isoformat()}


def decode_value(obj) -> AttributeValue:
    if obj is None:
        return MISSING
    if isinstance(obj, bool):
        raise WorkspaceError(f"boolean is not a value variant: {obj!r}")
    if isinstance(obj, str):
        return AttributeValue(TEXT, obj)
    if isinstance(obj, int):
        return AttributeValue(INTEGER, obj)
    if isinstance(obj, dict) and set(obj) == {"date"}:
        return AttributeValue(DATE, datetime.date.fromisoformat(obj["date"]))
    raise WorkspaceError(f"cannot decode value {obj!r}")


def _encode_context(mv: ManyValuedContext) -> dict:
    rows: Dict[str, dict] = {}
    for g in mv.objects:
        row = {}
        for tag in mv.sorts:
            v = mv.value(g, tag)
            if not v.is_missing:
                row[tag] = encode_value(v)
        rows[g] = row
    return {"objects": list(mv.objects), "sorts": list(mv.sorts), "rows": rows}


def _decode_context(doc: dict) -> ManyValuedContext:
    values = {
        g: {tag: decode_value(v) for tag, v in row.items()}
        for g, row in doc.get("rows", {}).items()
    }
    return ManyValuedContext(doc["objects"], doc["sorts"], values)


def _encode_plan(plan: ScalePlan) -> dict:
    out = {}
    for tag, s in plan.scales.items():
        entry: dict = {"kind": s.kind}
        if s.cuts is not None:
            entry["cuts"] = [encode_value(c) for c in s.cuts]
        out[tag] = entry
    return out


def _decode_plan(doc: dict) -> ScalePlan:
    scales = {}
    for tag, entry in doc.items():
        cuts = entry.get("cuts")
        scales[tag] = SortScale(
            entry["kind"],
            tuple(decode_value(c) for c in cuts) if cuts is not None else None,
        )
    return ScalePlan(scales)


@dataclass(frozen=True)
class WorkspaceDocument:
    contexts: Mapping[str, ManyValuedContext] = field(default_factory=dict)
    plans: Mapping[str, ScalePlan] = field(default_factory=dict)
    views: Mapping[str, Tuple[View, ...]] = field(default_factory=dict)
    links: Tuple[SharingLink, ...] = ()
    notes: Tuple[str, ...] = ()
    version: int = FORMAT_VERSION

    # -- consistency ------------------------------------------------------------

    def check_references(self) -> None:
        for name in list(self.plans) + list(self.views):
            if name not in self.contexts:
                raise WorkspaceError(f"no context named {name!r}")
        for link in self.links:
            for space, cls in (link.source, link.target):
                if space not in self.contexts:
                    raise WorkspaceError(f"link references missing space {space!r}")
                if cls not in {v.name for v in self.views.get(space, ())}:
                    raise WorkspaceError(
                        f"link references missing view {qualify(space, cls)!r}"
                    )

    # -- derived structures --------------------------------------------------------

    def context(self, name: str) -> ManyValuedContext:
        if name not in self.contexts:
            raise WorkspaceError(f"no context named {name!r}")
        return self.contexts[name]

    def plan_for(self, name: str) -> ScalePlan:
        plan = self.plans.get(name)
        return plan if plan is not None else ScalePlan.nominal(self.context(name))

    def scaled(self, name: str) -> FormalContext:
        return scale(self.context(name), self.plan_for(name))

    def knowledge_system(self, name: str) -> ConceptualKnowledgeSystem:
        return ConceptualKnowledgeSystem(
            self.context(name), self.plan_for(name), self.views.get(name, ())
        )

    def shared(self) -> SharedSpace:
        spaces = [(name, self.knowledge_system(name)) for name in self.contexts]
        return compose(spaces, self.links)

    # -- edits (copy-on-write) -------------------------------------------------------

    def with_context(self, name: str, mv, plan=None) -> "WorkspaceDocument":
        contexts = dict(self.contexts)
        contexts[name] = mv
        plans = dict(self.plans)
        if plan is not None:
            plans[name] = plan
        return replace(self, contexts=contexts, plans=plans)

    def with_plan(self, name: str, plan: ScalePlan) -> "WorkspaceDocument":
        self.context(name)
        return replace(self, plans={**self.plans, name: plan})

    def with_view(self, context_name: str, view: View) -> "WorkspaceDocument":
        self.context(context_name)
        views = dict(self.views)
        views[context_name] = tuple(views.get(context_name, ())) + (view,)
        return replace(self, views=views)

    def with_link(self, link: SharingLink) -> "WorkspaceDocument":
        doc = replace(self, links=self.links + (link,))
        doc.check_references()
        return doc


def to_json_dict(doc: WorkspaceDocument) -> dict:
    return {
        "version": doc.version,
        "contexts": {n: _encode_context(mv) for n, mv in doc.contexts.items()},
        "plans": {n: _encode_plan(p) for n, p in doc.plans.items()},
        "views": {
            n: [
                {
                    "name": v.name,
                    "scope": list(v.scope),
                    "constructor": v.constructor,
                    "note": v.note,
                }
                for v in vs
            ]
            for n, vs in doc.views.items()
        },
        "links": [
            {"from": qualify(*l.source), "to": qualify(*l.target)} for l in doc.links
        ],
        "notes": list(doc.notes),
    }


def from_json_dict(raw: dict) -> WorkspaceDocument:
    if raw.get("version") != FORMAT_VERSION:
        raise WorkspaceError(f"unsupported workspace version {raw.get('version')!r}")
    doc = WorkspaceDocument(
        contexts={n: _decode_context(c) for n, c in raw.get("contexts", {}).items()},
        plans={n: _decode_plan(p) for n, p in raw.get("plans", {}).items()},
        views={
            n: tuple(
                View(v["name"], tuple(v.get("scope", ())), v.get("constructor", "*"), v.get("note", ""))
                for v in vs
            )
            for n, vs in raw.get("views", {}).items()
        },
        links=tuple(
            SharingLink.of(l["from"], l["to"]) for l in raw.get("links", ())
        ),
        notes=tuple(raw.get("notes", ())),
    )
    doc.check_references()
    return doc


def dumps(doc: WorkspaceDocument) -> str:
    """Canonical serialization: stable key order, two-space indent."""
    return json.dumps(to_json_dict(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> WorkspaceDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"workspace document is not valid JSON: {exc}")
    return from_json_dict(raw)


def save(doc: WorkspaceDocument, path=None) -> Path:
    target = Path(path if path is not None else default_path())
    target.write_text(dumps(doc), encoding="utf-8")
    return target


def load(path=None) -> WorkspaceDocument:
    source = Path(path if path is not None else default_path())
    if not source.exists():
        raise WorkspaceError(f"workspace document not found: {source}")
    return loads(source.read_text(encoding="utf-8"))
