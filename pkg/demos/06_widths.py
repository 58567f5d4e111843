"""
Generalized hypertree width and treewidth
=========================================

Both widths reduce to a tree projection question against a resource
hypergraph.  The deciders return a decomposition when the width is at most
``k`` and ``None`` otherwise.
"""

from treeproj import Hypergraph, ghw_decide, tw_decide, verify_hypertree_decomposition, verify_tree_decomposition

c6 = Hypergraph(["AB", "BC", "CD", "DE", "EF", "AF"])
k4 = Hypergraph(["AB", "AC", "AD", "BC", "BD", "CD"])

for name, h in (("C6", c6), ("K4", k4)):
    for k in (1, 2, 3):
        hd = ghw_decide(h, k)
        if hd is not None:
            print(f"{name}: ghw <= {k}, checked width",
                  verify_hypertree_decomposition(h, hd, generalized=True))
            break
        print(f"{name}: ghw > {k}")

for name, h in (("C6", c6), ("K4", k4)):
    k = 1
    while tw_decide(h, k) is None:
        k += 1
    td = tw_decide(h, k)
    print(f"{name}: treewidth {k}, checked width", verify_tree_decomposition(h, td))
    for bag, p in zip(td.bags, td.parent):
        print("   bag", "".join(sorted(bag)), "parent", p)
