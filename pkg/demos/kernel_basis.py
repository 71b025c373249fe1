"""Bounded free basis of the kernel of the retraction killing c in the (4,4,4) triangle group."""

import sys

from artin_polyfree import eliminate, triangle_graph

radius = int(sys.argv[1]) if len(sys.argv) > 1 else 4
st = eliminate(triangle_graph(4, 4, 4), "c", radius)
print(st.to_text())
for step in st.steps[:5]:
    print(step.relation.to_text(st.graph))
