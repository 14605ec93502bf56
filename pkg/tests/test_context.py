from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nebfca import (
    FormalContext,
    ManyValuedContext,
    apposition,
    build_index,
    close_objects,
    derive_extent,
    derive_intent,
    text,
)
from nebfca.errors import AppositionError, IdentifierError
from nebfca.values import MISSING

from conftest import DOC_ATTRIBUTES, DOC_OBJECTS, naive_extent, naive_intent, random_context


class TestManyValuedContext:
    def test_domains_are_observed_values(self, documents_mv):
        assert documents_mv.domains["project"] == {text("plan1"), text("plan2")}
        assert documents_mv.domains["format"] == {text("postscript"), text("text")}

    def test_missing_cell_reads_as_missing(self, documents_mv):
        assert documents_mv.value("plan2.doc", "format") is MISSING
        assert documents_mv.value("plan2.doc", "project") == text("plan2")

    def test_unknown_identifiers(self, documents_mv):
        with pytest.raises(IdentifierError):
            documents_mv.value("nope.ps", "project")
        with pytest.raises(IdentifierError):
            documents_mv.value("plan1.ps", "folder")

    def test_control_characters_rejected(self):
        with pytest.raises(ValueError):
            ManyValuedContext(["a\x01b"], ["t"], {})

    def test_duplicate_objects_rejected(self):
        with pytest.raises(ValueError):
            ManyValuedContext(["a", "a"], ["t"], {})


class TestBuildIndex:
    def test_project_postings(self, documents_mv):
        idx = build_index(documents_mv, "project")
        assert idx.lookup(text("plan1")) == {"plan1.ps"}
        assert idx.lookup(text("plan2")) == {
            "plan2.ps",
            "plan2.doc",
            "notes1.txt",
            "notes2.txt",
        }

    def test_missing_value_absent_from_postings(self, documents_mv):
        idx = build_index(documents_mv, "format")
        for objs in idx.postings.values():
            assert "plan2.doc" not in objs

    def test_single_object_all_missing(self):
        mv = ManyValuedContext(["only"], ["t"], {"only": {}})
        assert build_index(mv, "t").postings == {}

    def test_unknown_tag(self, documents_mv):
        with pytest.raises(IdentifierError):
            build_index(documents_mv, "owner")

    def test_postings_match_linear_scan(self):
        rng = random.Random(7)
        for _ in range(40):
            n = rng.randint(1, 64)
            objects = [f"g{i}" for i in range(n)]
            values = {
                g: {"t": text(f"v{rng.randint(0, 5)}")} if rng.random() < 0.8 else {}
                for g in objects
            }
            mv = ManyValuedContext(objects, ["t"], values)
            idx = build_index(mv, "t")
            for v in mv.domains["t"]:
                scanned = {g for g in objects if mv.value(g, "t") == v}
                assert idx.lookup(v) == scanned


class TestDerivations:
    def test_single_object_row(self, documents_ctx):
        assert derive_intent(documents_ctx, {"plan1.ps"}) == {
            "project=plan1",
            "format=postscript",
        }

    def test_empty_object_set_derives_all_attributes(self, documents_ctx):
        assert derive_intent(documents_ctx, set()) == set(DOC_ATTRIBUTES)

    def test_two_object_common_attributes(self, documents_ctx):
        assert derive_intent(documents_ctx, {"plan1.ps", "plan2.ps"}) == {
            "format=postscript"
        }

    def test_attribute_column(self, documents_ctx):
        assert derive_extent(documents_ctx, {"project=plan2"}) == {
            "plan2.ps",
            "plan2.doc",
            "notes1.txt",
            "notes2.txt",
        }

    def test_empty_attribute_set_derives_all_objects(self, documents_ctx):
        assert derive_extent(documents_ctx, set()) == set(DOC_OBJECTS)

    def test_conjunction_of_attributes(self, documents_ctx):
        assert derive_extent(documents_ctx, {"project=plan2", "format=text"}) == {
            "notes1.txt",
            "notes2.txt",
        }

    def test_unknown_object_named_in_error(self, documents_ctx):
        with pytest.raises(IdentifierError, match="ghost.ps"):
            derive_intent(documents_ctx, {"ghost.ps"})

    def test_unknown_attribute(self, documents_ctx):
        with pytest.raises(IdentifierError):
            derive_extent(documents_ctx, {"format=mp3"})


class TestCloseObjects:
    def test_plan2_doc_generates_project_node(self, documents_ctx):
        c = close_objects(documents_ctx, {"plan2.doc"})
        assert c.extent == {"plan2.ps", "plan2.doc", "notes1.txt", "notes2.txt"}
        assert c.intent == {"project=plan2"}

    def test_empty_set_generates_bottom(self, documents_ctx):
        # (objs'', objs') with objs = {}: intent is all of M, extent M';
        # no row of this context is full, so the extent is empty.
        c = close_objects(documents_ctx, set())
        assert c.intent == set(DOC_ATTRIBUTES)
        assert c.extent == set()

    def test_empty_attribute_set_generates_top(self, documents_ctx):
        from nebfca import close_attributes

        c = close_attributes(documents_ctx, set())
        assert c.extent == set(DOC_OBJECTS)
        assert c.intent == set()

    def test_notes1_closure(self, documents_ctx):
        # hand value confirmed against the subset-scan oracle below
        c = close_objects(documents_ctx, {"notes1.txt"})
        assert c.extent == {"notes1.txt", "notes2.txt"}
        assert c.intent == {"project=plan2", "format=text"}
        oracle_intent = naive_intent(
            documents_ctx.objects, documents_ctx.attributes,
            documents_ctx.incidence, {"notes1.txt"},
        )
        oracle_extent = naive_extent(
            documents_ctx.objects, documents_ctx.attributes,
            documents_ctx.incidence, oracle_intent,
        )
        assert (c.extent, c.intent) == (oracle_extent, oracle_intent)


class TestGaloisProperties:
    def test_oracle_equivalence_on_random_contexts(self):
        rng = random.Random(101)
        for _ in range(60):
            ctx = random_context(rng)
            pairs = ctx.incidence
            objs = [g for g in ctx.objects if rng.random() < 0.5]
            attrs = [m for m in ctx.attributes if rng.random() < 0.5]
            assert derive_intent(ctx, objs) == naive_intent(
                ctx.objects, ctx.attributes, pairs, objs
            )
            assert derive_extent(ctx, attrs) == naive_extent(
                ctx.objects, ctx.attributes, pairs, attrs
            )

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_extensivity_and_idempotence(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        ctx = random_context(rng)
        objs = frozenset(g for g in ctx.objects if rng.random() < 0.5)
        intent = derive_intent(ctx, objs)
        closed = derive_extent(ctx, intent)
        assert objs <= closed
        assert derive_intent(ctx, closed) == intent

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_antitonicity(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        ctx = random_context(rng)
        smaller = frozenset(g for g in ctx.objects if rng.random() < 0.4)
        larger = smaller | frozenset(g for g in ctx.objects if rng.random() < 0.4)
        assert derive_intent(ctx, larger) <= derive_intent(ctx, smaller)


class TestApposition:
    def test_identity_with_zero_attribute_context(self, documents_ctx):
        empty = FormalContext(documents_ctx.objects, (), ())
        assert apposition(documents_ctx, empty) == documents_ctx

    def test_object_set_mismatch_lists_difference(self):
        a = FormalContext(["a"], ["m"], [("a", "m")])
        b = FormalContext(["a", "b"], ["n"], [])
        with pytest.raises(AppositionError) as exc:
            apposition(a, b)
        assert exc.value.only_right == {"b"}

    def test_collision_requires_labels(self):
        a = FormalContext(["g"], ["m"], [("g", "m")])
        b = FormalContext(["g"], ["m"], [])
        with pytest.raises(ValueError):
            apposition(a, b)
        c = apposition(a, b, left_label="L", right_label="R")
        assert c.attributes == ("L/m", "R/m")
        assert c.incidence == {("g", "L/m")}

    def test_associative_up_to_attribute_order(self):
        rng = random.Random(5)
        objs = [f"g{i}" for i in range(4)]
        parts = []
        for k in range(3):
            attrs = [f"m{k}{j}" for j in range(rng.randint(0, 3))]
            pairs = {(g, m) for g in objs for m in attrs if rng.random() < 0.5}
            parts.append(FormalContext(objs, attrs, pairs))
        ab_c = apposition(apposition(parts[0], parts[1]), parts[2])
        a_bc = apposition(parts[0], apposition(parts[1], parts[2]))
        assert set(ab_c.attributes) == set(a_bc.attributes)
        assert ab_c.incidence == a_bc.incidence

    def test_right_object_order_is_remapped(self):
        a = FormalContext(["x", "y"], ["m"], [("x", "m")])
        b = FormalContext(["y", "x"], ["n"], [("y", "n")])
        c = apposition(a, b)
        assert c.objects == ("x", "y")
        assert c.incidence == {("x", "m"), ("y", "n")}
