"""
The Robber and Captain game
===========================

The Captain places squads of cops taken from hyperedges of ``h2``.  The
Robber runs around ``h1`` avoiding them.  A winning strategy for the Captain
exists exactly when the pair has a tree projection.
"""

from treeproj import Configuration, initial, legal_moves, robber_components, solve, strategy_size
from treeproj.formats import parse_hypergraph

h1 = parse_hypergraph("e1(A,B,C)\ne2(C,D)\ne3(D,E,F)\ne4(A,F)\ne5(J,K)\ne6(G,H)\ne7(H,I)\ne8(I,J)\ne9(F,G)")
h2 = parse_hypergraph("s1(E,F,G,H,I,J,K)\ns2(A,D,E,F,J,K)\ns3(A,B,C,D,H)")


def show(nodes):
    return "{" + ",".join(sorted(nodes)) + "}"


# the opening position: no cops, the Robber may be anywhere
start = initial(h1)
print("start:", show(start.cops), show(start.component))
print("opening moves:", len(legal_moves(h1, h2, start)))

# cops on E, F, G split the Robber's world in two
for c in robber_components(h1, start, "EFG"):
    print("  Robber may flee to", show(c.members))

# from ABCD, guarding A, D, E, F still leaves B and C joined by e1
cfg = Configuration("EFG", "ABCD")
print("after ADEF:", [show(c.members) for c in robber_components(h1, cfg, "ADEF")])

# a full winning strategy
t = solve(h1, h2, first_move=frozenset("EFG"))


def walk(v, depth=0):
    print("  " * depth + f"cops {show(v.cops)}  robber in {show(v.component)}")
    for c in v.children:
        walk(c, depth + 1)


walk(t.root)
print("strategy size:", strategy_size(t))

# the triangle against itself: the Robber always escapes
tri = parse_hypergraph("X Y\nY Z\nX Z")
print("triangle winnable:", solve(tri, tri) is not None)
