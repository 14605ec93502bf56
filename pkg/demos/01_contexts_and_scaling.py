"""From raw metadata to a binary context.

A handful of documents carry two tags: which project they belong to and
what format they are stored in. One document has an unknown format, which
stays a first-class "missing" value: it never shows up in an index and
never satisfies a query.
"""

from nebfca import build_index, derive_extent, derive_intent, scale
from nebfca.fixtures import documents_context, documents_plan

mv = documents_context()
print("objects:", ", ".join(mv.objects))
print("sorts:  ", ", ".join(mv.sorts))
for tag in mv.sorts:
    print(f"domain of {tag}: {sorted(v.render() for v in mv.domains[tag])}")

# Every tag has an index relation: value -> documents carrying it.
idx = build_index(mv, "project")
for value, objs in sorted(idx.postings.items(), key=lambda kv: kv[0].render()):
    print(f"project={value.render()} -> {sorted(objs)}")

# plan2.doc has no recorded format, so no format posting mentions it.
fmt = build_index(mv, "format")
print("plan2.doc appears in a format posting:",
      any("plan2.doc" in objs for objs in fmt.postings.values()))

# Nominal scaling turns each observed value into one binary attribute.
ctx = scale(mv, documents_plan())
print("\nscaled attributes:", ", ".join(ctx.attributes))
print("incidence pairs:", len(ctx.incidence))
for g in ctx.objects:
    row = sorted(ctx.object_attributes(g), key=ctx.attributes.index)
    print(f"  {g:12s} {row}")

# The two derivation operators form a Galois connection.
common = derive_intent(ctx, ["plan1.ps", "plan2.ps"])
print("\nattributes shared by the two .ps files:", sorted(common))
print("objects with project=plan2 and format=text:",
      sorted(derive_extent(ctx, ["project=plan2", "format=text"])))
