"""Every maximal group of documents sharing attributes is a concept.

The document context yields seven concepts ordered by
generalization-specialization; the order is a complete lattice. Reduced
labeling writes each attribute at its most general node and each object at
its most specific node, which is exactly how the line diagram is drawn.
"""

from nebfca import (
    attribute_concept,
    enumerate_concepts,
    object_concept,
    purify,
    reduce,
    scale,
)
from nebfca.fixtures import documents_context, documents_plan

ctx = scale(documents_context(), documents_plan())
lat = enumerate_concepts(ctx)
print(f"{len(lat)} concepts, {len(lat.covers)} cover edges\n")

for i, c in enumerate(lat.concepts):
    attrs = lat.attribute_labels.get(i, [])
    objs = lat.object_labels.get(i, [])
    label = " / ".join(filter(None, [", ".join(attrs), ", ".join(objs)])) or "(unlabeled)"
    print(f"  [{i}] layer {lat.layers[i]}  |extent|={len(c.extent)}  {label}")

print("\ncover edges (lower -> upper):", sorted(lat.covers))

# plan2.doc introduces nothing beyond project=plan2, so it labels that node.
assert object_concept(lat, "plan2.doc") == attribute_concept(lat, "project=plan2")

# Joins and meets are computable for every pair.
a = object_concept(lat, "plan1.ps")
b = object_concept(lat, "notes1.txt")
j = lat.join(a, b)
print("\njoin of plan1.ps and notes1.txt nodes has extent",
      sorted(lat.concepts[j].extent, key=ctx.objects.index))

# notes1.txt and notes2.txt carry identical rows: purification merges them.
pure, merged = purify(ctx)
print("\nafter purification:", len(pure.objects), "objects; merged groups:", merged.objects)

# Reduction drops whatever is expressible from the rest; the lattice shape
# survives both cleanups.
reduced, report = reduce(ctx)
print("reduction removed objects", report.objects, "and attributes", report.attributes)
print("concepts before/after:", len(lat), "/", len(enumerate_concepts(reduced)))
