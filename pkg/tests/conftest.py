from __future__ import annotations

import random
from itertools import combinations

import pytest

from nebfca import FormalContext, ManyValuedContext, ScalePlan, text
from nebfca.values import AttributeValue


# -- the five-document metadata fixture --------------------------------------

DOC_OBJECTS = ["plan1.ps", "plan2.ps", "plan2.doc", "notes1.txt", "notes2.txt"]

DOC_VALUES = {
    "plan1.ps": {"project": text("plan1"), "format": text("postscript")},
    "plan2.ps": {"project": text("plan2"), "format": text("postscript")},
    "plan2.doc": {"project": text("plan2")},  # format unknown
    "notes1.txt": {"project": text("plan2"), "format": text("text")},
    "notes2.txt": {"project": text("plan2"), "format": text("text")},
}

DOC_ATTRIBUTES = ["project=plan1", "project=plan2", "format=postscript", "format=text"]

DOC_INCIDENCE = {
    ("plan1.ps", "project=plan1"),
    ("plan1.ps", "format=postscript"),
    ("plan2.ps", "project=plan2"),
    ("plan2.ps", "format=postscript"),
    ("plan2.doc", "project=plan2"),
    ("notes1.txt", "project=plan2"),
    ("notes1.txt", "format=text"),
    ("notes2.txt", "project=plan2"),
    ("notes2.txt", "format=text"),
}


@pytest.fixture
def documents_mv() -> ManyValuedContext:
    return ManyValuedContext(DOC_OBJECTS, ["project", "format"], DOC_VALUES)


@pytest.fixture
def documents_ctx() -> FormalContext:
    return FormalContext(DOC_OBJECTS, DOC_ATTRIBUTES, DOC_INCIDENCE)


@pytest.fixture
def documents_plan(documents_mv) -> ScalePlan:
    return ScalePlan.nominal(documents_mv)


# -- the six-document knowledge-system fixture --------------------------------

UNIVERSE_OBJECTS = [
    "plan1.ps", "plan2.ps", "plan2.doc", "notes0.txt", "notes1.txt", "notes2.txt",
]

UNIVERSE_VALUES = dict(
    DOC_VALUES,
    **{"notes0.txt": {"project": text("plan1"), "format": text("text")}},
)

UNIVERSE_VIEWS = [
    ("Object", (), "*"),
    ("Document", ("Object",), "*"),
    ("PostScript", ("Document",), "format=postscript"),
    ("Plan1", ("Document",), "project=plan1"),
    ("Plan2", ("Document",), "project=plan2"),
]

# The closed block matrix of the document universe: rows are the five
# classes then the six objects, columns are the five classes then the four
# scaled attributes.
UNIVERSE_MATRIX = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0, 1, 0],
    [1, 1, 0, 1, 0, 1, 0, 0, 0],
    [1, 1, 0, 0, 1, 0, 1, 0, 0],
    [1, 1, 1, 1, 0, 1, 0, 1, 0],
    [1, 1, 1, 0, 1, 0, 1, 1, 0],
    [1, 1, 0, 0, 1, 0, 1, 0, 0],
    [1, 1, 0, 1, 0, 1, 0, 0, 1],
    [1, 1, 0, 0, 1, 0, 1, 0, 1],
    [1, 1, 0, 0, 1, 0, 1, 0, 1],
]


def universe_mv() -> ManyValuedContext:
    return ManyValuedContext(UNIVERSE_OBJECTS, ["project", "format"], UNIVERSE_VALUES)


def universe_cks():
    from nebfca.cks import ConceptualKnowledgeSystem, View

    mv = universe_mv()
    views = [View(n, s, c) for n, s, c in UNIVERSE_VIEWS]
    return ConceptualKnowledgeSystem(mv, ScalePlan.nominal(mv), views)


@pytest.fixture
def document_universe():
    return universe_cks()


# -- independent oracles ------------------------------------------------------

def naive_intent(objects, attributes, incidence, objs):
    """Common attributes by direct scan of the incidence pairs."""
    return frozenset(m for m in attributes if all((g, m) in incidence for g in objs))


def naive_extent(objects, attributes, incidence, attrs):
    return frozenset(g for g in objects if all((g, m) in incidence for m in attrs))


def brute_force_concepts(objects, attributes, incidence):
    """Closures of every object subset, deduplicated. Exponential; tests only."""
    found = set()
    for r in range(len(objects) + 1):
        for subset in combinations(objects, r):
            intent = naive_intent(objects, attributes, incidence, subset)
            extent = naive_extent(objects, attributes, incidence, intent)
            found.add((extent, intent))
    return found


def random_context(rng: random.Random, max_objects=8, max_attributes=8, density=None):
    n_obj = rng.randint(0, max_objects)
    n_attr = rng.randint(0, max_attributes)
    objects = [f"g{i}" for i in range(n_obj)]
    attributes = [f"m{j}" for j in range(n_attr)]
    p = density if density is not None else rng.uniform(0.2, 0.8)
    incidence = {
        (g, m) for g in objects for m in attributes if rng.random() < p
    }
    return FormalContext(objects, attributes, incidence)


def random_mv_context(rng: random.Random, max_objects=8, max_sorts=4):
    """Random many-valued context with uniform text columns and some gaps."""
    n_obj = rng.randint(1, max_objects)
    n_sorts = rng.randint(1, max_sorts)
    objects = [f"g{i}" for i in range(n_obj)]
    sorts = [f"s{j}" for j in range(n_sorts)]
    values = {}
    for g in objects:
        row = {}
        for tag in sorts:
            if rng.random() < 0.85:
                row[tag] = text(f"v{rng.randint(0, 3)}")
        values[g] = row
    return ManyValuedContext(objects, sorts, values)


def assert_restriction_isomorphism(big, small, kept_objects, kept_attrs):
    """Exact isomorphism check between a lattice and its cleaned-up form.

    Purification and reduction come with a natural candidate map: restrict
    each extent/intent to the surviving objects/attributes. This asserts
    that the map is a bijection preserving order in both directions, which
    pins isomorphism exactly (covers then agree as well).
    """
    ko, ka = frozenset(kept_objects), frozenset(kept_attrs)
    mapped = [(c.extent & ko, c.intent & ka) for c in big.concepts]
    small_pairs = [(c.extent, c.intent) for c in small.concepts]
    assert len(set(mapped)) == len(mapped), "restriction map is not injective"
    assert set(mapped) == set(small_pairs), "restriction map is not onto"
    index = {p: i for i, p in enumerate(small_pairs)}
    f = [index[p] for p in mapped]
    n = len(big.concepts)
    for i in range(n):
        for j in range(n):
            assert big.leq(i, j) == small.leq(f[i], f[j])


def mixed_value(rng: random.Random) -> AttributeValue:
    import datetime

    from nebfca import date, integer
    k = rng.randint(0, 2)
    if k == 0:
        return text(f"t{rng.randint(0, 5)}")
    if k == 1:
        return integer(rng.randint(-5, 99))
    return date(datetime.date(1994, 1 + rng.randint(0, 11), 1 + rng.randint(0, 27)))
