"""Concept-lattice organization of file metadata.

Metadata abstracted from file-like resources is held in many-valued
contexts, scaled into formal contexts, organized into concept lattices and
named view taxonomies, queried through descriptive names, shared across
spaces via links, and browsed by concept neighborhoods.
"""

from .context import (
    FormalConcept,
    FormalContext,
    IndexRelation,
    ManyValuedContext,
    apposition,
    build_index,
    close_attributes,
    close_objects,
    derive_extent,
    derive_intent,
)
from .lattice import (
    ConceptLattice,
    attribute_concept,
    cover_relation,
    enumerate_concepts,
    object_concept,
    purify,
    reduce,
    serialize_lattice,
)
from .query import (
    UNREPRESENTABLE,
    DescriptiveName,
    Predicate,
    evaluate,
    parse,
    render,
    to_scaled_attributes,
)
from .scaling import ScalePlan, SortScale, scale, scale_facets
from .values import MISSING, AttributeValue, date, integer, text

__version__ = "0.1.0"

__all__ = [
    "AttributeValue",
    "ConceptLattice",
    "DescriptiveName",
    "FormalConcept",
    "FormalContext",
    "IndexRelation",
    "MISSING",
    "ManyValuedContext",
    "Predicate",
    "ScalePlan",
    "SortScale",
    "UNREPRESENTABLE",
    "apposition",
    "attribute_concept",
    "build_index",
    "close_attributes",
    "close_objects",
    "cover_relation",
    "date",
    "derive_extent",
    "derive_intent",
    "enumerate_concepts",
    "evaluate",
    "integer",
    "object_concept",
    "parse",
    "purify",
    "reduce",
    "render",
    "scale",
    "scale_facets",
    "serialize_lattice",
    "text",
]
