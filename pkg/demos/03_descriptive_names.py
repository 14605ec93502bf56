"""Finding documents by what they are, not where they live.

A descriptive name is a conjunction of attribute predicates: equality for
any value, order comparisons for integers and dates, and regular
expressions for text. Conjunctions of equalities line up exactly with
scaled attributes, so the same query can run either against the raw
metadata or as a lattice derivation.
"""

from nebfca import (
    ManyValuedContext,
    derive_extent,
    evaluate,
    integer,
    parse,
    render,
    scale,
    text,
    to_scaled_attributes,
)
from nebfca.fixtures import documents_context, documents_plan

mv = documents_context()

q = parse("project=plan2 & format=text")
print("query:", render(q))
print("matches:", sorted(evaluate(q, mv)))

# The same result through the scaled context: query terms become attributes.
plan = documents_plan()
attrs = to_scaled_attributes(q, plan)
ctx = scale(mv, plan)
print("as scaled attributes:", sorted(attrs))
print("derived extent:", sorted(derive_extent(ctx, attrs)))
assert evaluate(q, mv) == derive_extent(ctx, attrs)

# Regular expressions select on text shape; they have no scaled image.
ps = parse(r"name~/\.ps$/")
files = ManyValuedContext(
    list(mv.objects), ["name"],
    {g: {"name": __import__("nebfca").text(g)} for g in mv.objects},
)
print("\npostscript-looking names:", sorted(evaluate(ps, files)))
print("scalable?", to_scaled_attributes(ps, plan))

# Order predicates work on integer and date sorts.
sizes = ManyValuedContext(
    ["a.ps", "b.ps", "c.txt"], ["size"],
    {"a.ps": {"size": integer(120)}, "b.ps": {"size": integer(4096)},
     "c.txt": {"size": integer(900)}},
)
print("\nat least 1 KiB:", sorted(evaluate(parse("size>=1024"), sizes)))

# Scope restriction narrows any query to a working set.
print("postscript within plan2's documents:",
      sorted(evaluate(parse("format=postscript"), mv,
                      scope={"plan2.ps", "plan2.doc", "notes1.txt"})))
