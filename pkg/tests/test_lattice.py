from __future__ import annotations

import random

import pytest

from nebfca import (
    FormalContext,
    attribute_concept,
    cover_relation,
    enumerate_concepts,
    object_concept,
    purify,
    reduce,
    serialize_lattice,
)
from nebfca.errors import IdentifierError

from conftest import assert_restriction_isomorphism, brute_force_concepts, random_context


def as_pairs(lat):
    return {(c.extent, c.intent) for c in lat.concepts}


DOC_EXTENTS = [
    {"plan1.ps", "plan2.ps", "plan2.doc", "notes1.txt", "notes2.txt"},
    {"plan2.ps", "plan2.doc", "notes1.txt", "notes2.txt"},
    {"plan1.ps", "plan2.ps"},
    {"notes1.txt", "notes2.txt"},
    {"plan1.ps"},
    {"plan2.ps"},
    set(),
]


class TestEnumeration:
    def test_documents_has_seven_concepts(self, documents_ctx):
        lat = enumerate_concepts(documents_ctx)
        assert len(lat) == 7
        assert {frozenset(e) for e in DOC_EXTENTS} == {c.extent for c in lat.concepts}

    def test_empty_incidence_two_by_two(self):
        ctx = FormalContext(["a", "b"], ["x", "y"], [])
        lat = enumerate_concepts(ctx)
        assert as_pairs(lat) == {
            (frozenset({"a", "b"}), frozenset()),
            (frozenset(), frozenset({"x", "y"})),
        }

    def test_degenerate_contexts(self):
        assert len(enumerate_concepts(FormalContext([], [], []))) == 1
        assert len(enumerate_concepts(FormalContext(["g"], [], []))) == 1
        assert len(enumerate_concepts(FormalContext([], ["m"], []))) == 1

    def test_matches_brute_force_on_random_contexts(self):
        rng = random.Random(42)
        for _ in range(120):
            ctx = random_context(rng)
            lat = enumerate_concepts(ctx)
            assert as_pairs(lat) == brute_force_concepts(
                ctx.objects, ctx.attributes, ctx.incidence
            )
            assert len(as_pairs(lat)) == len(lat.concepts)  # no duplicates

    def test_concept_count_bounds(self):
        rng = random.Random(43)
        for _ in range(40):
            ctx = random_context(rng)
            lat = enumerate_concepts(ctx)
            assert 1 <= len(lat) <= 2 ** min(len(ctx.objects), len(ctx.attributes))

    def test_canonical_order(self, documents_ctx):
        lat = enumerate_concepts(documents_ctx)
        sizes = [len(c.extent) for c in lat.concepts]
        assert sizes == sorted(sizes, reverse=True)
        assert lat.top == 0
        assert lat.concepts[lat.bottom].intent == frozenset(documents_ctx.attributes)


class TestOrder:
    def test_documents_has_nine_cover_edges(self, documents_ctx):
        lat = enumerate_concepts(documents_ctx)
        assert len(cover_relation(lat)) == 9

    def test_chain_context(self):
        objs = ["g0", "g1", "g2"]
        attrs = ["m0", "m1", "m2"]
        pairs = {(f"g{i}", f"m{j}") for i in range(3) for j in range(3) if j < i}
        lat = enumerate_concepts(FormalContext(objs, attrs, pairs))
        assert len(lat) == 4
        assert len(lat.covers) == 3

    def test_antichain_of_two(self):
        ctx = FormalContext(["a", "b"], ["x", "y"], [("a", "x"), ("b", "y")])
        lat = enumerate_concepts(ctx)
        assert len(lat) == 4
        assert len(lat.covers) == 4

    def test_covers_equal_reduction_of_inclusion(self):
        rng = random.Random(44)
        for _ in range(40):
            ctx = random_context(rng, 6, 6)
            lat = enumerate_concepts(ctx)
            exts = [c.extent for c in lat.concepts]
            full = {
                (i, j)
                for i in range(len(exts))
                for j in range(len(exts))
                if exts[i] < exts[j]
            }
            reduced = {
                (i, j)
                for i, j in full
                if not any((i, k) in full and (k, j) in full for k in range(len(exts)))
            }
            assert lat.covers == reduced

    def test_join_meet_laws_on_documents(self, documents_ctx):
        from nebfca import derive_extent, derive_intent

        lat = enumerate_concepts(documents_ctx)
        for i in range(len(lat)):
            for j in range(len(lat)):
                join = lat.concepts[lat.join(i, j)]
                union = lat.concepts[i].extent | lat.concepts[j].extent
                assert join.extent == derive_extent(
                    documents_ctx, derive_intent(documents_ctx, union)
                )
                meet = lat.concepts[lat.meet(i, j)]
                assert meet.extent == lat.concepts[i].extent & lat.concepts[j].extent


class TestLabels:
    def test_figure_label_placement(self, documents_ctx):
        lat = enumerate_concepts(documents_ctx)
        plan2_node = attribute_concept(lat, "project=plan2")
        assert object_concept(lat, "plan2.doc") == plan2_node
        assert lat.object_labels[plan2_node] == ["plan2.doc"]
        assert object_concept(lat, "plan1.ps") == attribute_concept(lat, "project=plan1")
        text_node = attribute_concept(lat, "format=text")
        assert lat.concepts[text_node].extent == {"notes1.txt", "notes2.txt"}

    def test_every_object_and_attribute_labels_one_concept(self):
        rng = random.Random(45)
        for _ in range(30):
            ctx = random_context(rng)
            lat = enumerate_concepts(ctx)
            labeled_objs = [g for c in lat.object_labels.values() for g in c]
            labeled_attrs = [m for c in lat.attribute_labels.values() for m in c]
            assert sorted(labeled_objs) == sorted(ctx.objects)
            assert sorted(labeled_attrs) == sorted(ctx.attributes)

    def test_unknown_identifiers(self, documents_ctx):
        lat = enumerate_concepts(documents_ctx)
        with pytest.raises(IdentifierError):
            object_concept(lat, "ghost")
        with pytest.raises(IdentifierError):
            attribute_concept(lat, "ghost=1")


class TestPurify:
    def test_notes_rows_merge(self, documents_ctx):
        pure, report = purify(documents_ctx)
        assert len(pure.objects) == 4
        assert "notes2.txt" not in pure.objects
        assert ("notes1.txt", "notes2.txt") in report.objects
        assert report.attributes == ()

    def test_distinct_context_unchanged(self):
        ctx = FormalContext(["a", "b"], ["x", "y"], [("a", "x"), ("b", "y")])
        pure, report = purify(ctx)
        assert pure == ctx
        assert report.empty

    def test_concept_count_preserved(self, documents_ctx):
        lat = enumerate_concepts(documents_ctx)
        pure, _ = purify(documents_ctx)
        assert len(enumerate_concepts(pure)) == len(lat) == 7

    def test_duplicate_columns_merge(self):
        ctx = FormalContext(
            ["a", "b"], ["x", "y", "z"], [("a", "x"), ("a", "y"), ("b", "z")]
        )
        pure, report = purify(ctx)
        assert list(pure.attributes) == ["x", "z"]
        assert ("x", "y") in report.attributes


class TestReduce:
    def test_documents_attributes_all_kept(self, documents_ctx):
        reduced, report = reduce(documents_ctx)
        assert report.attributes == ()
        assert set(reduced.attributes) == set(documents_ctx.attributes)

    def test_empty_context_unchanged(self):
        ctx = FormalContext([], [], [])
        reduced, report = reduce(ctx)
        assert reduced.objects == () and reduced.attributes == ()
        assert report.objects == () and report.attributes == ()

    def test_plan2_doc_row_is_reducible(self, documents_ctx):
        _, report = reduce(documents_ctx)
        assert report.objects == ("plan2.doc",)

    def test_reduction_preserves_lattice_shape(self):
        rng = random.Random(46)
        checked = 0
        for _ in range(120):
            ctx = random_context(rng)
            before = enumerate_concepts(ctx)
            reduced, _ = reduce(ctx)
            after = enumerate_concepts(reduced)
            assert len(before) == len(after)
            assert_restriction_isomorphism(
                before, after, reduced.objects, reduced.attributes
            )
            checked += 1
        assert checked >= 100

    def test_purify_is_an_isomorphism(self):
        rng = random.Random(47)
        for _ in range(60):
            ctx = random_context(rng)
            pure, _ = purify(ctx)
            a, b = enumerate_concepts(ctx), enumerate_concepts(pure)
            assert len(a) == len(b)
            assert_restriction_isomorphism(a, b, pure.objects, pure.attributes)


class TestSerialization:
    def test_layers_respect_cover_direction(self, documents_ctx):
        lat = enumerate_concepts(documents_ctx)
        for lo, hi in lat.covers:
            assert lat.layers[lo] > lat.layers[hi]
        assert lat.layers[lat.top] == 0

    def test_serialized_shape(self, documents_ctx):
        doc = serialize_lattice(enumerate_concepts(documents_ctx))
        assert len(doc["concepts"]) == 7
        assert len(doc["covers"]) == 9
        assert doc["top"] == 0
        labels = [c["attribute_labels"] for c in doc["concepts"]]
        assert ["project=plan2"] in labels
