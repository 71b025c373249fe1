"""Poly-free tower of a graph file, one line per removed vertex."""

import sys

from artin_polyfree import load_graph, poly_free_tower

path = sys.argv[1] if len(sys.argv) > 1 else "graphs/triangle442.txt"
graph, _ = load_graph(path)
for i, s in enumerate(poly_free_tower(graph, radius=3), 1):
    st = s.state
    print(f"step {i}: remove {s.removed}, kept {len(st.retained)}, "
          f"eliminated {len(st.eliminated)}, escaped {len(st.escaped)}")
