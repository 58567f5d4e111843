"""
Hypergraphs, separators and components
======================================

Builds the running example, removes a separator and looks at what is left.
Run with ``python3 demos/01_components.py``.
"""

from treeproj import Hypergraph, border, frontier, leq, v_components
from treeproj.formats import parse_hypergraph

# the query hypergraph, written in the text format the CLI reads
h1 = parse_hypergraph("""
e1(A,B,C)
e2(C,D)
e3(D,E,F)
e4(A,F)
e5(J,K)
e6(G,H)
e7(H,I)
e8(I,J)
e9(F,G)
""")
print("nodes:", "".join(sorted(h1.nodes)), " edges:", len(h1))

# no separator: one component holding everything
print("[{}]-components:", ["".join(sorted(c.members)) for c in v_components(h1)])

# E, F and G split the graph in two
sep = "EFG"
for c in v_components(h1, sep):
    print(f"[{sep}]-component", "".join(c),
          " frontier", "".join(sorted(frontier(h1, c.members))),
          " border", "".join(sorted(border(h1, c.members))))

# the cover order: every edge of the left side sits inside an edge of the right
small = Hypergraph(["CD", "AB"])
big = Hypergraph(["ABCD"])
print("{CD, AB} <= {ABCD}:", leq(small, big))
print("{ABCD} <= {CD, AB}:", leq(big, small))
