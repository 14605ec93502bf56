"""Command-line surface over the workspace document.

Exit codes: 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .cks import View, extend_context
from .cxt import export_cxt
from .errors import NebfcaError
from .lattice import enumerate_concepts, serialize_lattice
from .navigation import BrowseSession, NeighborhoodFilters, Seed, serialize_neighborhood
from .query import evaluate, parse
from .records import TagRule, ingest_directory, ingest_records
from .sharing import SharingLink, block_matrix
from .workspace import (
    WorkspaceDocument,
    _decode_plan,
    default_path,
    load,
    save,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nebfca",
        description="Organize file metadata into concept lattices and views.",
    )
    parser.add_argument("--version", action="version", version=f"nebfca {__version__}")
    parser.add_argument(
        "-w",
        "--workspace",
        default=None,
        help="workspace document path (default: $NEBFCA_WORKSPACE or workspace.json)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="ingest a directory or a record file")
    p.add_argument("path")
    p.add_argument("--rules", help="JSON file of path-segment tag rules")
    p.add_argument("--name", help="context name (default: basename of path)")

    p = sub.add_parser("scale", help="attach a scale plan to a context")
    p.add_argument("--plan", required=True, help="JSON plan file")
    p.add_argument("--context")

    p = sub.add_parser("lattice", help="print the concept lattice")
    p.add_argument("--format", choices=["json", "dot", "cxt"], default="json")
    p.add_argument("--context")
    p.add_argument("--extended", action="store_true", help="include views as nodes")

    p = sub.add_parser("query", help="evaluate a descriptive name")
    p.add_argument("text")
    p.add_argument("--context")

    p = sub.add_parser("view", help="manage views")
    vsub = p.add_subparsers(dest="view_command", required=True)
    pa = vsub.add_parser("add")
    pa.add_argument("name")
    pa.add_argument("--scope", default="", help="comma-separated parent views")
    pa.add_argument("--constructor", default="*")
    pa.add_argument("--note", default="")
    pa.add_argument("--context")
    pl = vsub.add_parser("list")
    pl.add_argument("--context")
    pr = vsub.add_parser("resolve")
    pr.add_argument("name")
    pr.add_argument("--context")

    p = sub.add_parser("share", help="link and compose spaces")
    ssub = p.add_subparsers(dest="share_command", required=True)
    sl = ssub.add_parser("link")
    sl.add_argument("source", metavar="from", help="space/class being scoped")
    sl.add_argument("target", metavar="to", help="space/class scoped upon")
    ssub.add_parser("compose")

    p = sub.add_parser("browse", help="explore a concept neighborhood")
    p.add_argument("--seed", required=True, help="object id or attribute name")
    p.add_argument("--threshold", type=int, default=1)
    p.add_argument("--top-attrs", type=int, default=None)
    p.add_argument("--context")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--addr", default="127.0.0.1:7878")
    p.add_argument("--ui", default=None, help="directory of built UI assets")

    return parser


def _load_doc(path) -> WorkspaceDocument:
    return load(path)


def _pick_context(doc: WorkspaceDocument, name):
    if name is not None:
        return doc.context(name), name
    if len(doc.contexts) == 1:
        only = next(iter(doc.contexts))
        return doc.contexts[only], only
    raise NebfcaError(
        f"--context required; workspace has {sorted(doc.contexts) or 'no contexts'}"
    )


def _lattice_dot(lat) -> str:
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=circle];"]
    for i, c in enumerate(lat.concepts):
        attrs = lat.attribute_labels.get(i, [])
        objs = lat.object_labels.get(i, [])
        label = "\\n".join([", ".join(attrs), ", ".join(objs)]).strip("\\n")
        lines.append(f'  c{i} [label="{label}"];')
    for lo, hi in sorted(lat.covers):
        lines.append(f"  c{lo} -> c{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_ingest(args, path) -> int:
    source = Path(args.path)
    if source.is_dir():
        rules = []
        if args.rules:
            spec = json.loads(Path(args.rules).read_text(encoding="utf-8"))
            rules = [TagRule(r["tag"], int(r["segment"])) for r in spec]
        mv = ingest_directory(source, rules)
    else:
        mv = ingest_records(source)
    name = args.name or source.stem
    try:
        doc = _load_doc(path)
    except NebfcaError:
        doc = WorkspaceDocument()
    doc = doc.with_context(name, mv)
    save(doc, path)
    print(f"ingested {len(mv.objects)} objects into context {name!r}")
    return 0


def _cmd_scale(args, path) -> int:
    doc = _load_doc(path)
    _, name = _pick_context(doc, args.context)
    plan = _decode_plan(json.loads(Path(args.plan).read_text(encoding="utf-8")))
    doc = doc.with_plan(name, plan)
    doc.scaled(name)  # surface plan/context mismatches now
    save(doc, path)
    print(f"plan attached to context {name!r}")
    return 0


def _cmd_lattice(args, path) -> int:
    doc = _load_doc(path)
    _, name = _pick_context(doc, args.context)
    ctx = (
        extend_context(doc.knowledge_system(name)) if args.extended else doc.scaled(name)
    )
    if args.format == "cxt":
        sys.stdout.write(export_cxt(ctx))
        return 0
    lat = enumerate_concepts(ctx)
    if args.format == "dot":
        sys.stdout.write(_lattice_dot(lat))
    else:
        json.dump(serialize_lattice(lat), sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    return 0


def _cmd_query(args, path) -> int:
    doc = _load_doc(path)
    mv, _ = _pick_context(doc, args.context)
    for g in sorted(evaluate(parse(args.text), mv), key=mv.objects.index):
        print(g)
    return 0


def _cmd_view(args, path) -> int:
    doc = _load_doc(path)
    _, name = _pick_context(doc, args.context)
    if args.view_command == "add":
        scope = tuple(s for s in args.scope.split(",") if s)
        view = View(args.name, scope, args.constructor, args.note)
        doc = doc.with_view(name, view)
        doc.knowledge_system(name)  # validates the new set, raises on problems
        save(doc, path)
        print(f"view {args.name!r} added to {name!r}")
        return 0
    cks = doc.knowledge_system(name)
    if args.view_command == "list":
        for v in cks.views:
            scope = ",".join(v.scope) or "-"
            print(f"{v.name}\tscope={scope}\tconstructor={v.constructor}")
        return 0
    for g in sorted(cks.containment(args.name), key=cks.context.objects.index):
        print(g)
    return 0


def _cmd_share(args, path) -> int:
    doc = _load_doc(path)
    if args.share_command == "link":
        doc = doc.with_link(SharingLink.of(args.source, args.target))
        save(doc, path)
        print(f"linked {args.source} -> {args.target}")
        return 0
    bm = block_matrix(doc.shared())
    width = max((len(r) for r in bm.row_labels), default=0)
    print(" " * width + " " + " ".join(bm.col_labels))
    for label, row in zip(bm.row_labels, bm.rows):
        cells = " ".join(
            ("X" if v else ".").ljust(len(c)) for v, c in zip(row, bm.col_labels)
        )
        print(label.ljust(width) + " " + cells)
    return 0


def _cmd_browse(args, path) -> int:
    doc = _load_doc(path)
    mv, name = _pick_context(doc, args.context)
    session = BrowseSession(mv, [("base", doc.plan_for(name))])
    if args.seed in session.context.objects:
        seed = Seed.object(args.seed)
    elif args.seed in session.context.attributes:
        seed = Seed.attribute(args.seed)
    else:
        raise NebfcaError(f"seed {args.seed!r} is neither an object nor an attribute")
    filters = NeighborhoodFilters(threshold=args.threshold, top_k=args.top_attrs)
    hood = session.neighborhood(seed, filters)
    payload = serialize_neighborhood(hood)
    for i, c in enumerate(payload["concepts"]):
        extent = ", ".join(c["extent"]) or "-"
        intent = ", ".join(c["intent"]) or "-"
        print(f"concept {i}: layer {c['layer']}  extent [{extent}]  intent [{intent}]")
    print(f"{len(payload['concepts'])} concepts, {len(payload['covers'])} cover edges")
    return 0


def _cmd_serve(args, path) -> int:  # pragma: no cover - interactive
    from .server import serve

    doc = _load_doc(path)
    serve(doc, addr=args.addr, path=path, ui_dir=args.ui)
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "scale": _cmd_scale,
    "lattice": _cmd_lattice,
    "query": _cmd_query,
    "view": _cmd_view,
    "share": _cmd_share,
    "browse": _cmd_browse,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    logging.basicConfig(format="%(levelname)s %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    path = args.workspace or default_path()
    try:
        return _COMMANDS[args.command](args, path)
    except NebfcaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint():  # pragma: no cover
    sys.exit(main())
