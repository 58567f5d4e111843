"""One test per acceptance criterion.

Each test records a ``criterion N: PASS|FAIL ...`` line, printed in the
terminal summary (and to stdout when run as a script).  Tolerances are pinned
in the constants below.
"""

import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

import conftest
from conftest import FIXTURES, S, hg
from treeproj.corpus import exhaustive_pairs, random_hypergraph, random_pairs
from treeproj.errors import ConnectednessError
from treeproj.formats import load_hypergraph
from treeproj.game import (Configuration, brute_solve, escape_door, is_monotone, monotonize, solve,
                           strategy_size, verify_strategy)
from treeproj.hypergraph import Hypergraph, frontier, power_k, v_components
from treeproj.jointrees import (HypertreeDecomposition, check_sh07_connected, is_sh07_connected,
                                verify_hypertree_decomposition, verify_tree_decomposition)
from treeproj.treeprojection import (TPInstance, brute_force_tp, check_minimality_conditions, find_tp,
                                     ghw_decide, is_tree_projection, minimize, strategy_to_tp, tp_to_strategy,
                                     tw_decide)

EXAMPLE_SECONDS = 1.0      # criterion 1 runtime bound
ORACLE_SECONDS = 600.0     # criterion 2 runtime bound
RANDOM_PAIRS = 500         # criterion 2 random pairs (seed 1, at most 7 nodes)
RANDOM_SEED = 1
MIN_NON_MONOTONE = 200     # criterion 4 sample floor
BRUTE_SEEDS = 3            # biased brute-solver runs per instance
GHW_K = (1, 2, 3)          # criterion 6 widths
GHW_SAMPLE = 120           # criterion 6 random hypergraphs on at most 6 nodes
MIN_SH07_CASES = 10        # criterion 7 hand-built cases


@contextmanager
def criterion(n, what):
    info = {"what": what}
    start = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        conftest.ACCEPTANCE[n] = f"criterion {n}: FAIL  {info['what']}  ({type(exc).__name__}: {exc})"[:400]
        raise
    conftest.ACCEPTANCE[n] = f"criterion {n}: PASS  {info['what']}  [{time.perf_counter() - start:.2f}s]"


@pytest.fixture(scope="module")
def corpus():
    return exhaustive_pairs() + random_pairs(RANDOM_SEED, RANDOM_PAIRS)


@pytest.fixture(scope="module")
def solvable(corpus):
    out = []
    for h1, h2 in corpus:
        inst = TPInstance(h1, h2)
        ha = find_tp(inst)
        if ha is not None:
            out.append((h1, h2, inst, ha))
    return out


def test_criterion_1_running_example():
    # the first hypergraph is a reconstruction: only five of its edges are
    # given; the path G-H-I-J and the edge {F,G} are added so that the
    # stated components, frontiers and game are reproduced
    with criterion(1, "running example values (H1P reconstruction, published values)"):
        start = time.perf_counter()
        h1 = load_hypergraph(FIXTURES / "h1p.hg")
        h2 = load_hypergraph(FIXTURES / "h2p.hg")
        assert [c.members for c in v_components(h1, S("EFG"))] == [S("ABCD"), S("HIJK")]
        assert frontier(h1, S("ABCD")) == S("ABCDEF")
        assert escape_door(h1, Configuration(S("EFG"), S("ABCD")), S("ADEF")) == frozenset()
        t = solve(h1, h2, first_move=S("EFG"))
        assert t is not None and verify_strategy(t, h1, h2) and is_monotone(t, h1)
        left = next(c for c in t.root.children if c.component == S("ABCD"))

        def moves(v):
            return 0 if not v.children else 1 + max(moves(c) for c in v.children)

        # the opening move counts: {E,F,G}, then {A,D,E,F}, then capture
        assert 1 + moves(left) <= 3
        assert time.perf_counter() - start < EXAMPLE_SECONDS


def test_criterion_2_existence_oracles(corpus):
    with criterion(2, f"find_tp == brute_force_tp == brute_solve on {len(corpus)} pairs"):
        start = time.perf_counter()
        bad = []
        for h1, h2 in corpus:
            inst = TPInstance(h1, h2)
            a = find_tp(inst) is not None
            b = brute_force_tp(inst) is not None
            c = brute_solve(h1, h2) is not None
            if not a == b == c:
                bad.append((h1, h2, a, b, c))
        assert not bad, bad[:3]
        assert time.perf_counter() - start < ORACLE_SECONDS


def test_criterion_3_minimality_properties(solvable):
    with criterion(3, f"minimize output satisfies every necessary condition on {len(solvable)} instances"):
        bad = []
        for h1, h2, inst, ha in solvable:
            m = minimize(ha, inst)
            rep = check_minimality_conditions(m, inst, certify=False)
            ok = (rep.valid and rep.reduced and rep.nodes_preserved and rep.components_preserved
                  and rep.h1_connected_all_roots and len(rep.normal_form_witnesses) == len(m.edges)
                  and rep.all_flags)
            if not ok:
                bad.append((h1, h2, m, rep.notes))
        assert not bad, bad[:3]


def test_criterion_4_monotonization(corpus):
    with criterion(4, "monotonize output is monotone, winning and strictly smaller") as info:
        seen = 0
        bad = []
        for i, (h1, h2) in enumerate(corpus):
            for seed in range(BRUTE_SEEDS):
                t = brute_solve(h1, h2, bias="nonmonotone", seed=seed + i)
                if t is None or is_monotone(t, h1):
                    continue
                seen += 1
                try:
                    out = monotonize(t, h1, h2)
                    if not (is_monotone(out, h1) and verify_strategy(out, h1, h2)
                            and strategy_size(out) < strategy_size(t)):
                        bad.append((h1, h2, seed + i))
                except Exception as exc:  # any crash counts as a failure
                    bad.append((h1, h2, seed + i, exc))
        info["what"] += f" on {seen} non-monotone inputs"
        assert seen >= MIN_NON_MONOTONE, seen
        assert not bad, bad[:3]


def test_criterion_5_round_trips(solvable):
    with criterion(5, f"strategy -> TP -> strategy round trips on {len(solvable)} instances"):
        bad = []
        for h1, h2, inst, _ in solvable:
            if not is_tree_projection(strategy_to_tp(solve(h1, h2)), inst):
                bad.append(("strategy_to_tp", h1, h2))
            m = minimize(find_tp(inst), inst)
            s = tp_to_strategy(m, inst)
            if not (verify_strategy(s, h1, h2) and is_monotone(s, h1)):
                bad.append(("tp_to_strategy", h1, h2))
        assert not bad, bad[:3]


def treewidth_brute(h):
    """Exact treewidth by dynamic programming over elimination orders."""
    nodes = sorted(h.nodes)
    n = len(nodes)
    idx = {x: i for i, x in enumerate(nodes)}
    adj = [0] * n
    for e in h.edges:
        for x in e:
            for y in e:
                if x != y:
                    adj[idx[x]] |= 1 << idx[y]

    def q(s, v):
        # neighbours outside s reachable from v through s
        seen, stack, out = 1 << v, [v], 0
        while stack:
            u = stack.pop()
            nb = adj[u] & ~seen
            seen |= nb
            for w in range(n):
                if nb >> w & 1:
                    if s >> w & 1:
                        stack.append(w)
                    else:
                        out += 1
        return out

    best = {0: -1}
    for s in range(1, 1 << n):
        best[s] = min(max(best[s & ~(1 << v)], q(s & ~(1 << v), v)) for v in range(n) if s >> v & 1)
    return max(best[(1 << n) - 1], 0)


def test_criterion_6_width_deciders():
    nx_atlas = pytest.importorskip("networkx.generators.atlas")
    with criterion(6, "tw_decide and ghw_decide agree with brute-force oracles"):
        named = {"triangle": (hg("XY", "YZ", "XZ"), 2), "P3": (hg("XY", "YZ"), 1),
                 "K4": (hg("AB", "AC", "AD", "BC", "BD", "CD"), 3),
                 "C6": (hg("AB", "BC", "CD", "DE", "EF", "AF"), 2)}
        for name, (g, w) in named.items():
            assert treewidth_brute(g) == w, name
        graphs = []
        for g in nx_atlas.graph_atlas_g():
            if g.number_of_nodes():
                names = {v: chr(65 + v) for v in g.nodes}
                graphs.append(Hypergraph([frozenset((names[a], names[b])) for a, b in g.edges], names.values()))
        bad = []
        for g in graphs:
            w = treewidth_brute(g)
            d = tw_decide(g, w)
            if d is None or verify_tree_decomposition(g, d) > w or (w > 0 and tw_decide(g, w - 1) is not None):
                bad.append(("tw", g, w))
        rng = random.Random(6)
        hyper = [random_hypergraph(rng, max_nodes=6, max_edges=5, max_edge=3) for _ in range(GHW_SAMPLE)]
        hyper.append(hg("XY", "YZ", "XZ"))
        for h in hyper:
            for k in GHW_K:
                d = ghw_decide(h, k)
                oracle = brute_force_tp(TPInstance(h, power_k(h, k))) is not None
                if (d is not None) != oracle:
                    bad.append(("ghw", h, k))
                elif d is not None and verify_hypertree_decomposition(h, d, generalized=True) > k:
                    bad.append(("ghw width", h, k))
        tri = hg("XY", "YZ", "XZ")
        assert ghw_decide(tri, 1) is None and ghw_decide(tri, 2) is not None
        assert not bad, bad[:3]


def sh07_cases():
    """Hand-built decompositions with the expected verdict."""
    ab, bc, cd, de, ac = S("AB"), S("BC"), S("CD"), S("DE"), S("AC")
    return [
        ("single vertex, one edge", HypertreeDecomposition([ab], [[ab]], [None]), True),
        ("root with two edges", HypertreeDecomposition([S("ABC")], [[ab, bc]], [None]), False),
        ("path, each edge meets parent", HypertreeDecomposition([ab, bc, cd], [[ab], [bc], [cd]], [None, 0, 1]),
         True),
        ("child edge misses chi(s) & chi(p)",
         HypertreeDecomposition([ab, S("BCD")], [[ab], [bc, S("D")]], [None, 0]), False),
        ("child edge hits chi(s) but not chi(p)",
         HypertreeDecomposition([ab, S("BD")], [[ab], [S("B"), de]], [None, 0]), False),
        ("star, all children share a node",
         HypertreeDecomposition([ab, bc, S("BD")], [[ab], [bc], [S("BD")]], [None, 0, 0]), True),
        ("empty shared part", HypertreeDecomposition([ab, cd], [[ab], [cd]], [None, 0]), False),
        ("width 2 child, both edges meet the separator",
         HypertreeDecomposition([ab, S("ABC")], [[ab], [ab, bc]], [None, 0]), True),
        ("width 2 child, one edge off the separator",
         HypertreeDecomposition([ab, S("BCD")], [[ab], [bc, cd]], [None, 0]), False),
        ("deep violation below a good prefix",
         HypertreeDecomposition([ab, bc, S("CD")], [[ab], [bc], [S("C"), de]], [None, 0, 1]), False),
        ("root with no edges", HypertreeDecomposition([S("A")], [[]], [None]), False),
        ("rerooted path keeps single-edge root",
         HypertreeDecomposition([ab, bc, ac], [[ab], [bc], [ac]], [1, None, 1]), True),
    ]


def test_criterion_7_sh07_substitute():
    # the separating instance exists only as a figure; the connectedness
    # test is validated on hand-built cases instead
    cases = sh07_cases()
    with criterion(7, f"substitute: SH07 connectedness on {len(cases)} hand-built cases (separating instance "
                      "not reproducible)"):
        assert len(cases) >= MIN_SH07_CASES
        assert any(not ok for name, _, ok in cases if "two edges" in name)
        assert any(not ok for name, _, ok in cases if "misses" in name)
        for name, hd, ok in cases:
            assert is_sh07_connected(hd) == ok, name
        with pytest.raises(ConnectednessError) as exc:
            check_sh07_connected(cases[3][1])
        assert exc.value.witness == (0, 1, S("D"))


@pytest.mark.long
def test_supplied_separating_instance(tmp_path):
    """Runs the CLI pipeline on a user-supplied file named by TPJ_GHEX."""
    path = os.environ.get("TPJ_GHEX")
    if not path:
        pytest.skip("set TPJ_GHEX to a hypergraph file")
    cli = [sys.executable, "-m", "treeproj.cli"]
    out = tmp_path / "hd.json"
    run = subprocess.run(cli + ["ghw", path, "--k", "3", "--json", "--out", str(out)])
    assert run.returncode in (0, 1)
    if run.returncode == 0:
        assert subprocess.run(cli + ["verify-hd", path, str(out), "--generalized"]).returncode == 0
        sh07 = subprocess.run(cli + ["verify-hd", path, str(out), "--generalized", "--sh07"])
        print("width-3 decomposition is SH07-connected:", sh07.returncode == 0)


if __name__ == "__main__":
    code = pytest.main([__file__, "-q"])
    for n in sorted(conftest.ACCEPTANCE):
        print(conftest.ACCEPTANCE[n])
    sys.exit(code)
