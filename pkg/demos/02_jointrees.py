"""
Acyclicity and join trees
=========================

GYO reduction decides acyclicity.  An acyclic hypergraph gets a join tree,
which can be rerooted and checked.
"""

from treeproj import Hypergraph, build_join_tree, is_acyclic, verify_join_tree
from treeproj.formats import jointree_to_dot

path = Hypergraph(["AB", "BC", "CDE"])
triangle = Hypergraph(["XY", "YZ", "XZ"])

print("path acyclic:", is_acyclic(path))
print("triangle acyclic:", is_acyclic(triangle))
print("join tree for triangle:", build_join_tree(triangle))

jt = build_join_tree(path)
for v, p in zip(jt.vertices, jt.parent):
    print("  ", "".join(sorted(v)), "parent:", "-" if p is None else "".join(sorted(jt.vertices[p])))
print("valid:", verify_join_tree(path, jt))

# same tree hanging from the other end
flipped = jt.rerooted(jt.index_of("CDE"))
print("rerooted at CDE, still valid:", verify_join_tree(path, flipped))

# adding the edge AE closes a cycle
print("with AE acyclic:", is_acyclic(Hypergraph(["AB", "BC", "CDE", "AE"])))

# DOT output for graphviz
print(jointree_to_dot(jt))
