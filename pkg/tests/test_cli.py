from __future__ import annotations

import json
from importlib import resources

import pytest

from nebfca.cli import main
from nebfca.cxt import import_cxt
from nebfca.fixtures import documents_context, documents_plan, document_universe
from nebfca.workspace import WorkspaceDocument, load, save


@pytest.fixture()
def ws(tmp_path):
    """A workspace file holding the document fixture and its views."""
    universe = document_universe()
    doc = WorkspaceDocument().with_context(
        "documents", documents_context(), documents_plan()
    )
    doc = doc.with_context("universe", universe.context, universe.plan)
    for view in universe.views:
        doc = doc.with_view("universe", view)
    path = tmp_path / "ws.json"
    save(doc, path)
    return path


def run(capsys, *argv) -> tuple:
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestQueryCommand:
    def test_document_query(self, capsys, ws):
        code, out, _ = run(
            capsys, "-w", ws, "query", "project=plan2 & format=text",
            "--context", "documents",
        )
        assert code == 0
        assert out.splitlines() == ["notes1.txt", "notes2.txt"]

    def test_syntax_error_is_domain_error(self, capsys, ws):
        code, _, err = run(capsys, "-w", ws, "query", "x=", "--context", "documents")
        assert code == 1
        assert "offset" in err

    def test_usage_error_exit_code(self, ws):
        with pytest.raises(SystemExit) as exc:
            main(["-w", str(ws), "query"])
        assert exc.value.code == 2


class TestLatticeCommand:
    def test_json_lattice(self, capsys, ws):
        code, out, _ = run(capsys, "-w", ws, "lattice", "--context", "documents")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["concepts"]) == 7
        assert len(doc["covers"]) == 9

    def test_cxt_export_parses_back(self, capsys, ws):
        code, out, _ = run(
            capsys, "-w", ws, "lattice", "--format", "cxt", "--context", "documents"
        )
        assert code == 0
        ctx = import_cxt(out)
        assert len(ctx.objects) == 5 and len(ctx.attributes) == 4

    def test_dot_output(self, capsys, ws):
        code, out, _ = run(
            capsys, "-w", ws, "lattice", "--format", "dot", "--context", "documents"
        )
        assert code == 0
        assert out.startswith("digraph lattice {")
        assert out.count("->") == 9

    def test_extended_lattice(self, capsys, ws):
        code, out, _ = run(
            capsys, "-w", ws, "lattice", "--context", "universe", "--extended"
        )
        assert json.loads(out)["concepts"] and code == 0
        assert len(json.loads(out)["concepts"]) == 11


class TestViewCommands:
    def test_resolve_plan2(self, capsys, ws):
        code, out, _ = run(
            capsys, "-w", ws, "view", "resolve", "Plan2", "--context", "universe"
        )
        assert code == 0
        assert out.splitlines() == [
            "plan2.ps",
            "plan2.doc",
            "notes1.txt",
            "notes2.txt",
        ]

    def test_add_and_list(self, capsys, ws):
        code, _, _ = run(
            capsys, "-w", ws, "view", "add", "Everything", "--context", "documents"
        )
        assert code == 0
        code, _, _ = run(
            capsys, "-w", ws, "view", "add", "Texts", "--scope", "Everything",
            "--constructor", "format=text", "--context", "documents",
        )
        assert code == 0
        code, out, _ = run(capsys, "-w", ws, "view", "list", "--context", "documents")
        assert code == 0
        assert "Texts\tscope=Everything\tconstructor=format=text" in out

    def test_cyclic_view_rejected(self, capsys, ws):
        code, _, err = run(
            capsys, "-w", ws, "view", "add", "Loop", "--scope", "Loop",
            "--context", "documents",
        )
        assert code == 1
        assert "cycle" in err or "unknown-scope" in err


class TestIngestAndScale:
    def test_ingest_records_then_query(self, capsys, ws, tmp_path):
        records = tmp_path / "r.records"
        records.write_text("name: a\nkind: x\n\nname: b\nkind: y\n")
        code, out, _ = run(capsys, "-w", ws, "ingest", records, "--name", "tiny")
        assert code == 0 and "2 objects" in out
        code, out, _ = run(capsys, "-w", ws, "query", "kind=x", "--context", "tiny")
        assert code == 0 and out.splitlines() == ["a"]

    def test_ingest_directory_with_rules(self, capsys, tmp_path):
        wspath = tmp_path / "new.json"
        tree = tmp_path / "tree"
        (tree / "plan1").mkdir(parents=True)
        (tree / "plan1" / "a.ps").write_text("x")
        rules = tmp_path / "rules.json"
        rules.write_text('[{"tag": "project", "segment": 0}]')
        code, out, _ = run(
            capsys, "-w", wspath, "ingest", tree, "--rules", rules, "--name", "files"
        )
        assert code == 0
        doc = load(wspath)
        assert doc.contexts["files"].value("a.ps", "project").value == "plan1"

    def test_scale_command(self, capsys, ws, tmp_path):
        plan = tmp_path / "plan.json"
        plan.write_text(json.dumps({"project": {"kind": "nominal"}, "format": {"kind": "skip"}}))
        code, _, _ = run(capsys, "-w", ws, "scale", "--plan", plan, "--context", "documents")
        assert code == 0
        code, out, _ = run(capsys, "-w", ws, "lattice", "--context", "documents")
        body = json.loads(out)
        intents = [tuple(c["intent"]) for c in body["concepts"]]
        assert all("format=text" not in i for i in intents)


class TestShareAndBrowse:
    def test_share_link_and_compose(self, capsys, ws):
        code, _, _ = run(
            capsys, "-w", ws, "view", "add", "Everything", "--context", "documents"
        )
        code, out, _ = run(
            capsys, "-w", ws, "share", "link", "documents/Everything", "universe/Plan2"
        )
        assert code == 0
        code, out, _ = run(capsys, "-w", ws, "share", "compose")
        assert code == 0
        assert "documents/Everything" in out
        assert "universe/Plan2" in out

    def test_dangling_link_is_domain_error(self, capsys, ws):
        code, _, err = run(
            capsys, "-w", ws, "share", "link", "documents/Nope", "universe/Plan2"
        )
        assert code == 1

    def test_browse_object_seed(self, capsys, ws):
        code, out, _ = run(
            capsys, "-w", ws, "browse", "--seed", "plan2.ps", "--context", "documents"
        )
        assert code == 0
        assert "4 concepts" in out
        code, out, _ = run(
            capsys, "-w", ws, "browse", "--seed", "plan2.ps", "--threshold", "2",
            "--context", "documents",
        )
        assert "3 concepts" in out

    def test_browse_attribute_seed(self, capsys, ws):
        code, out, _ = run(
            capsys, "-w", ws, "browse", "--seed", "format=text", "--context", "documents"
        )
        assert code == 0
        assert "2 concepts" in out

    def test_browse_unknown_seed(self, capsys, ws):
        code, _, err = run(
            capsys, "-w", ws, "browse", "--seed", "ghost", "--context", "documents"
        )
        assert code == 1


class TestParity:
    def test_cli_query_equals_api_query(self, capsys, ws):
        import threading
        import urllib.request

        from nebfca.server import make_server

        code, out, _ = run(
            capsys, "-w", ws, "query", "format=postscript", "--context", "documents"
        )
        cli_objects = out.splitlines()

        server = make_server(load(ws), "127.0.0.1:0")
        t = threading.Thread(target=server.serve_forever, daemon=True)
        t.start()
        try:
            host, port = server.server_address[:2]
            req = urllib.request.Request(
                f"http://{host}:{port}/api/contexts/documents/query",
                data=json.dumps({"q": "format=postscript"}).encode(),
                method="POST",
            )
            with urllib.request.urlopen(req) as resp:
                api_objects = json.loads(resp.read())["objects"]
        finally:
            server.shutdown()
            server.server_close()
        assert cli_objects == api_objects


class TestEnvironment:
    def test_workspace_path_from_env(self, capsys, ws, monkeypatch):
        monkeypatch.setenv("NEBFCA_WORKSPACE", str(ws))
        code, out, _ = run(
            capsys, "query", "format=postscript", "--context", "documents"
        )
        assert code == 0
        assert out.splitlines() == ["plan1.ps", "plan2.ps"]

    def test_missing_workspace_is_domain_error(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("NEBFCA_WORKSPACE", str(tmp_path / "absent.json"))
        code, _, err = run(capsys, "query", "*")
        assert code == 1
        assert "not found" in err
