"""
Finding and shrinking tree projections
======================================

A tree projection of ``(h1, h2)`` is an acyclic ``ha`` squeezed between
them.  We find one from a winning strategy, shrink it to a minimal one and
print the report of necessary conditions.
"""

from treeproj import (Hypergraph, TPInstance, brute_force_tp, certify_minimal, check_minimality_conditions,
                      find_tp, is_tree_projection, minimize, tp_to_strategy, verify_strategy)
from treeproj.formats import parse_hypergraph

h1 = parse_hypergraph("e1(A,B,C)\ne2(C,D)\ne3(D,E,F)\ne4(A,F)\ne5(J,K)\ne6(G,H)\ne7(H,I)\ne8(I,J)\ne9(F,G)")
h2 = parse_hypergraph("s1(E,F,G,H,I,J,K)\ns2(A,D,E,F,J,K)\ns3(A,B,C,D,H)")
inst = TPInstance(h1, h2)


def show(h):
    return "  ".join("".join(sorted(e)) for e in h.edges)


# a coarse projection: three big edges
ha = Hypergraph(["EFGHIJK", "ADEFJK", "ABCD"])
print("coarse:", show(ha), " valid:", is_tree_projection(ha, inst))

rep = check_minimality_conditions(ha, inst, certify=False)
print("  reduced", rep.reduced, " h1-connected", rep.h1_connected_all_roots, " all flags", rep.all_flags)

m = minimize(ha, inst)
print("minimal:", show(m))
print("  certified minimal:", certify_minimal(m, inst))
print("  matches exhaustive search:", m == brute_force_tp(inst))

# the game view of the same object
print("found via the game:", show(find_tp(inst)))
t = tp_to_strategy(m, inst)
print("strategy from the minimal projection wins:", verify_strategy(t, h1, h2))

rep = check_minimality_conditions(m, inst)
print("report flags all true:", rep.all_flags)
for note in rep.notes:
    print("  note:", note)
