"""Packaged sample datasets: the five-document space, its six-document
knowledge-system variant, and the government-publications space with a
private reader space linked onto it.

The class list ships one truncated name, "Legislative:Technology Assesme",
verbatim from the source material; it is data, not a typo to repair.
"""

from __future__ import annotations

import re
from importlib import resources

from .cks import ConceptualKnowledgeSystem, View
from .context import ManyValuedContext
from .records import ingest_records
from .scaling import NOMINAL, ScalePlan, SortScale
from .sharing import SharedSpace, SharingLink, compose


def _data(name: str) -> str:
    return resources.files("nebfca.data").joinpath(name).read_text(encoding="utf-8")


def documents_context() -> ManyValuedContext:
    """Five documents with project and format tags; one format is unknown."""
    mv = ingest_records(_data("documents.records"))
    return mv.restrict_sorts(["project", "format"])


def documents_plan() -> ScalePlan:
    return ScalePlan({"project": SortScale(NOMINAL), "format": SortScale(NOMINAL)})


def document_universe() -> ConceptualKnowledgeSystem:
    """Six documents under five views: a universal root and class, one per
    format family, and one per project."""
    mv = ingest_records(_data("documents_universe.records")).restrict_sorts(
        ["project", "format"]
    )
    views = [
        View("Object"),
        View("Document", ("Object",)),
        View("PostScript", ("Document",), "format=postscript"),
        View("Plan1", ("Document",), "project=plan1"),
        View("Plan2", ("Document",), "project=plan2"),
    ]
    return ConceptualKnowledgeSystem(mv, documents_plan(), views)


def class_path_constructor(path: str) -> str:
    """Query matching a class path or anything beneath it."""
    return f"class~/^{re.escape(path)}(:|$)/"


def marvel_classes() -> list:
    return [line for line in _data("marvel_classes.txt").splitlines() if line]


def marvel_cks() -> ConceptualKnowledgeSystem:
    """Government publications space: records classified by menu path, one
    view per class containing everything in that menu or any submenu."""
    mv = ingest_records(_data("marvel.records"))
    views = [View("Marvel")]
    for path in marvel_classes():
        parent = path.rsplit(":", 1)[0] if ":" in path else "Marvel"
        views.append(View(path, (parent,), class_path_constructor(path)))
    return ConceptualKnowledgeSystem(mv, ScalePlan.nominal(mv), views)


def reader_cks() -> ConceptualKnowledgeSystem:
    """A private space holding one note and an issue-specific view."""
    mv = ingest_records(_data("reader.records")).restrict_sorts(["published-by"])
    views = [
        View("Reader"),
        View(
            "NuclearWaste",
            ("Reader",),
            "published-by~/Energy|White House/",
            note="issue-specific interest profile",
        ),
    ]
    return ConceptualKnowledgeSystem(mv, ScalePlan.nominal(mv), views)


NUCLEAR_WASTE_LINKS = (
    ("reader/NuclearWaste", "marvel/Executive:Energy"),
    ("reader/NuclearWaste", "marvel/Legislative"),
    ("reader/NuclearWaste", "marvel/Executive:White House"),
)


def marvel_shared() -> SharedSpace:
    """The publications space with the reader space scoped onto it."""
    links = [SharingLink.of(a, b) for a, b in NUCLEAR_WASTE_LINKS]
    return compose([("marvel", marvel_cks()), ("reader", reader_cks())], links)
