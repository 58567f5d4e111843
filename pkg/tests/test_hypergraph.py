import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from conftest import S, hg
from treeproj.hypergraph import (Hypergraph, border, clusters_tk, clusters_tk_size, contained_in, frontier,
                                 gaifman, is_reduced, leq, power_k, properly_contained, reduce, touches,
                                 v_components, v_path_exists)

NODES = "ABCDEF"


@st.composite
def hypergraphs(draw, nodes=NODES, max_edges=5):
    edges = draw(st.lists(st.sets(st.sampled_from(nodes), min_size=1, max_size=4), min_size=1, max_size=max_edges))
    return Hypergraph([frozenset(e) for e in edges])


def comps(h, v):
    return [c.members for c in v_components(h, v)]


# brute-force oracles --------------------------------------------------------

def bfs_components(h, v):
    v = set(v)
    rest = sorted(h.nodes - v)
    adj = {x: set() for x in rest}
    for e in h.edges:
        live = e - v
        for x in live:
            adj[x] |= live - {x}
    seen, out = set(), []
    for x in rest:
        if x in seen:
            continue
        comp, todo = {x}, [x]
        while todo:
            y = todo.pop()
            for z in adj[y] - comp:
                comp.add(z)
                todo.append(z)
        seen |= comp
        out.append(frozenset(comp))
    return out


# orderings ----------------------------------------------------------------

def test_leq_examples():
    assert leq(hg("A"), hg("AB"))
    assert not leq(hg("AB"), hg("A"))
    assert leq(hg("CD"), hg("ABCDH"))


def test_contained_in_examples():
    assert contained_in(hg("A"), hg("AB"))
    assert not contained_in(hg("AB"), hg("A"))
    assert properly_contained(hg("A"), hg("AB"))
    assert not properly_contained(hg("AB"), hg("AB"))


def test_reduce_examples():
    assert reduce(hg("AB", "A")) == hg("AB")
    assert reduce(hg("AB", "BC", "ABC")) == hg("ABC")
    h = hg("AB", "BC")
    assert reduce(h) == h
    assert not is_reduced(hg("AB", "A"))


def test_reduce_keeps_isolated_nodes():
    h = hg("AB", "A", nodes="ABZ")
    assert reduce(h).nodes == S("ABZ")


def test_gaifman_examples():
    assert set(gaifman(hg("ABC")).edges) == {S("AB"), S("AC"), S("BC")}
    assert set(gaifman(hg("AB", "BCD")).edges) == {S("AB"), S("BC"), S("BD"), S("CD")}
    g = hg("XY", "YZ")
    assert set(gaifman(g).edges) == set(g.edges)


# connectivity ---------------------------------------------------------------

def test_components_of_running_example(h1p):
    assert comps(h1p, "EFG") == [S("ABCD"), S("HIJK")]


def test_components_empty_separator(h1p, tri):
    assert comps(h1p, "") == [h1p.nodes]
    assert comps(tri, "Y") == [S("XZ")]


def test_frontier_and_border(h1p):
    assert frontier(h1p, "ABCD") == S("ABCDEF")
    assert frontier(h1p, "HIJK") == S("GHIJK")
    assert frontier(h1p, "") == frozenset()
    assert border(h1p, "ABCD") == S("EF")
    assert border(h1p, "HIJK") == S("G")
    assert border(h1p, h1p.nodes) == frozenset()


def test_v_path(h1p):
    assert v_path_exists(h1p, "EFG", "A", "D")
    assert not v_path_exists(h1p, "EFG", "A", "K")
    assert v_path_exists(h1p, "EFG", "B", "B")
    with pytest.raises(ValueError):
        v_path_exists(h1p, "EFG", "E", "A")


def test_touches(h1p):
    assert touches(h1p, "EFG", "E", "ABCD")
    assert not touches(h1p, "EFG", "G", "ABCD")
    assert not touches(h1p, "EFG", "A", "")


def test_power_k(tri, p3):
    assert power_k(tri, 1) == tri
    assert set(power_k(tri, 2).edges) == set(tri.edges) | {S("XYZ")}
    assert set(power_k(p3, 2).edges) == {S("XY"), S("YZ"), S("XYZ")}
    with pytest.raises(ValueError):
        power_k(tri, 0)


def test_clusters_tk(tri):
    assert len(clusters_tk(tri, 1)) == 6
    two = clusters_tk(tri, 2)
    assert len(two) == 7 and S("XYZ") in two
    assert len(clusters_tk(hg("AB", "CD"), 1)) == 10
    assert clusters_tk_size(4, 1) == comb(4, 1) + comb(4, 2)
    with pytest.raises(ValueError):
        clusters_tk(tri, -1)


# properties -----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.lists(hypergraphs(nodes="ABCD", max_edges=3), min_size=3, max_size=3))
def test_containment_is_a_partial_order(hs):
    a, b, c = [reduce(h) for h in hs]
    for x in (a, b, c):
        assert contained_in(x, x)
    if contained_in(a, b) and contained_in(b, a):
        assert set(a.edges) == set(b.edges)
    if contained_in(a, b) and contained_in(b, c):
        assert contained_in(a, c)


@settings(max_examples=100, deadline=None)
@given(hypergraphs(), hypergraphs())
def test_containment_implies_cover(a, b):
    if set(a.edges) <= set(b.edges):
        assert contained_in(a, b)
    if contained_in(a, b):
        assert leq(a, b)


@settings(max_examples=150, deadline=None)
@given(hypergraphs(), st.sets(st.sampled_from(NODES), max_size=3))
def test_components_match_bfs(h, v):
    got = comps(h, v)
    assert sorted(map(sorted, got)) == sorted(map(sorted, bfs_components(h, v)))
    for c in got:
        assert not c & v
        for x, y in itertools.combinations(sorted(c), 2):
            assert v_path_exists(h, v, x, y)
    assert frozenset().union(*got) == h.nodes - v if got else h.nodes <= v


@settings(max_examples=150, deadline=None)
@given(hypergraphs(), st.sets(st.sampled_from(NODES), max_size=3), st.sets(st.sampled_from(NODES), max_size=3))
def test_frontier_laws(h, c1, extra):
    c1 = frozenset(c1) & h.nodes
    c2 = c1 | (frozenset(extra) & h.nodes)
    assert frontier(h, c1) == c1 | border(h, c1) or not c1
    assert frontier(h, c1) <= frontier(h, c2)


@settings(max_examples=150, deadline=None)
@given(hypergraphs(), st.data())
def test_component_refinement_under_cover(h1, data):
    # every [h]-component of h1 sits in one of ha; those of ha are unions of h1's
    extra = data.draw(st.lists(st.sets(st.sampled_from(sorted(h1.nodes)), min_size=1), max_size=2))
    ha = Hypergraph(list(h1.edges) + [frozenset(e) for e in extra], h1.nodes)
    assert leq(h1, ha)
    for h in ha.edges:
        small, big = comps(h1, h), comps(ha, h)
        for c in small:
            assert sum(1 for d in big if c <= d) == 1
        for d in big:
            assert frozenset().union(*[c for c in small if c <= d]) == d


@settings(max_examples=150, deadline=None)
@given(hypergraphs(), st.sets(st.sampled_from(NODES), max_size=3), st.sets(st.sampled_from(NODES), min_size=1,
                                                                           max_size=4))
def test_touching_is_frontier_membership(h, m, m2):
    m = frozenset(m) & h.nodes
    m2 = frozenset(m2) & h.nodes
    for c in comps(h, m):
        everyone = all(touches(h, m, x, c) for x in m2)
        assert everyone == (m2 <= frontier(h, c))
