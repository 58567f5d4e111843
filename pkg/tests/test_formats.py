import json

import pytest

from conftest import S
from treeproj.corpus import antichains, exhaustive_pairs, gen_corpus, random_pairs
from treeproj.formats import (ParseError, decomposition_from_json, decomposition_to_json, format_hypergraph,
                              gametree_from_json, gametree_to_dot, gametree_to_json, hypergraph_to_json,
                              jointree_to_dot, parse_hypergraph)
from treeproj.game import brute_solve, check_strategy, solve
from treeproj.jointrees import HypertreeDecomposition, TreeDecomposition, build_join_tree


def test_parse_named():
    h = parse_hypergraph("e1(A,B,C)\ne2(C,D)")
    assert h.nodes == S("ABCD") and len(h) == 2
    assert h.name_of(S("CD")) == "e2"
    assert h.edge_by_name("e1") == S("ABC")


def test_parse_bare_and_comments():
    h = parse_hypergraph("# a comment\nA B  # trailing\n\nB C\n")
    assert set(h.edges) == {S("AB"), S("BC")}


def test_parse_errors():
    with pytest.raises(ParseError) as exc:
        parse_hypergraph("e(", "x.hg")
    assert exc.value.line == 1 and "x.hg:1" in str(exc.value)
    with pytest.raises(ParseError) as exc:
        parse_hypergraph("A B\ne()")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_hypergraph("A-B C")


def test_duplicate_edge_warns():
    with pytest.warns(UserWarning, match="duplicate"):
        h = parse_hypergraph("A B\nB A\n")
    assert len(h) == 1


def test_round_trip_corpus():
    family = antichains("ABCD", 3)[::4] + [h for pair in random_pairs(2, 60) for h in pair]
    for h in family:
        assert parse_hypergraph(format_hypergraph(h)) == h


def test_json_has_node_index(h1p):
    data = hypergraph_to_json(h1p)
    assert data["node_index"]["A"] == 0 and data["nodes"][0] == "A"


def test_decomposition_json(tri):
    hd = HypertreeDecomposition([S("XYZ")], [[S("XY"), S("YZ")]], [None])
    data = json.loads(json.dumps(decomposition_to_json(hd, tri)))
    assert data["vertices"][0]["lambda"] == ["xy", "yz"]
    back = decomposition_from_json(data, tri)
    assert back == hd
    td = TreeDecomposition([S("XY"), S("YZ")], [None, 0])
    assert decomposition_from_json(decomposition_to_json(td), tri) == td
    with pytest.raises(ParseError):
        decomposition_from_json({"vertices": [{"parent": None}]}, tri)


def test_gametree_json_round_trip(h1p, h2p):
    for t in (solve(h1p, h2p), brute_solve(h1p, h2p, bias="nonmonotone", seed=4)):
        data = json.loads(json.dumps(gametree_to_json(t, h2p)))
        back = gametree_from_json(data, h2p)
        check_strategy(back, h1p, h2p)
        assert gametree_to_json(back, h2p) == data


def test_gametree_json_needs_one_root():
    with pytest.raises(ParseError):
        gametree_from_json({"vertices": [{"id": 0, "cops": [], "squad": None, "component": ["A"]},
                                         {"id": 1, "cops": [], "squad": None, "component": ["B"]}],
                            "edges": []})


def test_dot(p3, h1p, h2p):
    dot = jointree_to_dot(build_join_tree(p3))
    assert dot.startswith("graph jointree {") and "--" in dot
    assert "->" in gametree_to_dot(solve(h1p, h2p))


# corpus -----------------------------------------------------------------------

def test_exhaustive_family_size():
    assert len(antichains("ABCD", 3)) == 165
    # one representative per relabelling class
    assert len(exhaustive_pairs()) == 1819


def test_gen_corpus_deterministic(tmp_path):
    a = gen_corpus(1, str(tmp_path / "a"), count=10)
    b = gen_corpus(1, str(tmp_path / "b"), count=10)
    c = gen_corpus(2, str(tmp_path / "c"), count=10)
    read = lambda paths: [open(p).read() for p in paths]
    assert read(a) == read(b)
    assert read(a) != read(c)
    assert len(a) == 20


def test_random_pairs_within_bounds():
    for h1, h2 in random_pairs(9, 100):
        assert len(h1.nodes) <= 7 and len(h1) <= 6
        assert all(len(e) <= 4 for e in h1.edges)
