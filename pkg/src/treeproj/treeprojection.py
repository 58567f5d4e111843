"""Tree projections: search, verification, minimization and the width deciders.

A tree projection of ``(h1, h2)`` is an acyclic ``ha`` with ``h1 <= ha <= h2``.
Search goes through the Robber and Captain game; :func:`brute_force_tp` is an
independent oracle built on elimination orderings of ``h1``'s Gaifman graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from . import game
from .errors import ComponentTreeError, ConnectednessError, TreeProjectionError
from .hypergraph import (Hypergraph, clusters_tk, contained_in, is_reduced, leq, power_k,
                         properly_contained, reduce, v_components)
from .jointrees import (HypertreeDecomposition, JoinTree, TreeDecomposition, build_join_tree,
                        check_component_tree, check_h1_connected, is_acyclic, verify_join_tree)


@dataclass(frozen=True)
class TPInstance:
    """A pair ``(h1, h2)``.  ``h1`` keeps only nodes lying in some hyperedge."""

    h1: Hypergraph
    h2: Hypergraph

    def __post_init__(self):
        object.__setattr__(self, "h1", game.arena(self.h1))

    @property
    def nodes(self) -> frozenset:
        return self.h1.nodes


def _fmt(nodes) -> str:
    return "{" + ",".join(sorted(nodes)) + "}"


# verification ----------------------------------------------------------------

def check_tree_projection(ha: Hypergraph, inst: TPInstance) -> None:
    for e in inst.h1.edges:
        if not any(e <= f for f in ha.edges):
            raise TreeProjectionError(f"h1 edge {_fmt(e)} is not covered by ha", "h1<=ha", e)
    for e in ha.edges:
        if not any(e <= f for f in inst.h2.edges):
            raise TreeProjectionError(f"ha edge {_fmt(e)} is not covered by h2", "ha<=h2", e)
    if not is_acyclic(ha):
        raise TreeProjectionError("ha is cyclic", "acyclic", None)


def is_tree_projection(ha: Hypergraph, inst: TPInstance) -> bool:
    try:
        check_tree_projection(ha, inst)
    except TreeProjectionError:
        return False
    return True


# game-based search -------------------------------------------------------------

def strategy_to_tp(s: game.GameTree, inst: Optional[TPInstance] = None) -> Hypergraph:
    """Hypergraph of the non-empty positions of a monotone winning strategy."""
    if inst is not None:
        game.check_strategy(s, inst.h1, inst.h2)
        if not game.is_monotone(s, inst.h1):
            raise ValueError("strategy is not monotone")
        nodes = inst.nodes
    else:
        nodes = s.root.component
    ha = Hypergraph(s.positions(), nodes)
    if inst is not None:
        check_tree_projection(ha, inst)
    return ha


def find_tp(inst: TPInstance, moves: str = "maximal") -> Optional[Hypergraph]:
    if not inst.h1.edges:
        return Hypergraph((), inst.nodes)
    if not leq(inst.h1, inst.h2):
        return None
    s = game.solve(inst.h1, inst.h2, moves=moves)
    if s is None:
        return None
    return strategy_to_tp(s, inst)


# brute-force oracle ------------------------------------------------------------

def _reduced_add(fam: frozenset, b: int) -> frozenset:
    for x in fam:
        if b & x == b:
            return fam
    return frozenset([x for x in fam if x & b != x] + [b])


def _elimination_setup(inst: TPInstance):
    a = inst.h1
    n = len(a.order)
    adj = [0] * n
    for m in a.masks:
        rest = m
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            adj[i] |= m & ~low
            rest ^= low
    caps = [a.mask_within(e) for e in inst.h2.edges]
    caps = [c for c in caps if not any(c & d == c and c != d for d in caps)]

    def bag(s, v):
        seen = 1 << v
        frontier = 1 << v
        out = 1 << v
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nb = adj[low.bit_length() - 1]
            out |= nb & ~s
            grow = nb & s & ~seen
            seen |= grow
            frontier |= grow
        return out

    def fits(b):
        return any(b & c == b for c in caps)

    return a, n, bag, fits


def tp_exists_brute(inst: TPInstance, limit: Optional[int] = None) -> bool:
    """Existence only: is there an elimination ordering whose bags all fit in ``h2``?"""
    a, n, bag, fits = _elimination_setup(inst)
    _check_bound(n, limit)
    full = (1 << n) - 1
    reach = {0}
    for _ in range(n):
        nxt = set()
        for s in reach:
            for v in range(n):
                if not s >> v & 1 and (s | 1 << v) not in nxt and fits(bag(s, v)):
                    nxt.add(s | 1 << v)
        reach = nxt
        if not reach:
            return False
    return full in reach


def _check_bound(n, limit):
    bound = game.max_nodes() if limit is None else limit
    if n > bound:
        raise ValueError(f"brute force is limited to {bound} nodes, got {n}")


def brute_force_tp(inst: TPInstance, limit: Optional[int] = None) -> Optional[Hypergraph]:
    """A ⊂-minimal tree projection found without the game, or ``None``.

    Every tree projection lies above the bag hypergraph of some elimination
    ordering of ``h1`` (eliminate along a perfect ordering of the projection's
    chordal Gaifman graph), and each such bag hypergraph whose bags fit in
    ``h2`` is itself a tree projection.  So the ⊂-minimal members of the
    family of reduced bag hypergraphs are exactly the minimal tree projections.
    """
    a, n, bag, fits = _elimination_setup(inst)
    _check_bound(n, limit)
    if n == 0:
        return Hypergraph((), ())
    if not tp_exists_brute(inst, limit=n):
        return None
    full = (1 << n) - 1
    layer = {0: {frozenset()}}
    for _ in range(n):
        nxt: dict = {}
        for s, fams in layer.items():
            for v in range(n):
                if s >> v & 1:
                    continue
                b = bag(s, v)
                if not fits(b):
                    continue
                bucket = nxt.setdefault(s | 1 << v, set())
                for f in fams:
                    bucket.add(_reduced_add(f, b))
        layer = nxt
    fams = layer.get(full, set())
    cands = sorted((Hypergraph([a.members(x) for x in f], a.nodes) for f in fams),
                   key=lambda h: (len(h.edges), sum(len(e) for e in h.edges), [sorted(e) for e in h.edges]))
    for h in cands:
        if not any(properly_contained(g, h) for g in cands):
            return h
    return None


# minimization ------------------------------------------------------------------

def _trim(ha: Hypergraph, nodes: frozenset) -> Hypergraph:
    edges = [e & nodes for e in ha.edges if e & nodes]
    return reduce(Hypergraph(edges, nodes))


def _split_candidates(ha: Hypergraph, h1: Hypergraph):
    """Component-splitting rewrites: an [h]-component of ``ha`` holding
    several [h]-components of ``h1`` is cut along them."""
    for h in ha.edges:
        for ca in v_components(ha, h):
            parts = [c.members for c in v_components(h1, h) if c.members <= ca.members]
            if len(parts) < 2:
                continue
            big = [e for e in ha.edges if e & ca.members]
            keep = [e for e in ha.edges if not e & ca.members]
            new = keep + [e & (p | h) for e in big for p in parts if e & (p | h)]
            yield reduce(Hypergraph(new, ha.nodes))


def _shrink_candidates(ha: Hypergraph):
    for e in ha.edges:
        yield ha.with_edges([f for f in ha.edges if f != e])
    for e in ha.edges:
        for x in sorted(e):
            if len(e) > 1:
                yield reduce(ha.with_edges([f if f != e else e - {x} for f in ha.edges]))


def minimize(ha: Hypergraph, inst: TPInstance, exact: bool = True, limit: Optional[int] = None) -> Hypergraph:
    """⊂-descent from a tree projection to a locally minimal one.

    Steps: reduction, trimming to ``nodes(h1)``, component splitting and
    single-node / single-edge removal, each taken only when the result is
    still a tree projection strictly below the current one.  With ``exact``
    and a small enough instance, a final brute-force pass lands on a globally
    ⊂-minimal projection below the local fixpoint.
    """
    check_tree_projection(ha, inst)
    nodes = inst.nodes
    cur = _trim(reduce(ha), nodes)
    assert is_tree_projection(cur, inst)
    changed = True
    while changed:
        changed = False
        for gen in (_split_candidates(cur, inst.h1), _shrink_candidates(cur)):
            for cand in gen:
                if properly_contained(cand, cur) and is_tree_projection(cand, inst):
                    cur = cand
                    changed = True
                    break
            if changed:
                break
    if exact and len(nodes) <= (game.max_nodes() if limit is None else limit):
        best = brute_force_tp(TPInstance(inst.h1, cur), limit=len(nodes))
        if best is not None and best != cur:
            assert contained_in(best, cur) and is_tree_projection(best, inst)
            cur = best
    return cur


def certify_minimal(ha: Hypergraph, inst: TPInstance, limit: Optional[int] = None) -> Optional[bool]:
    """``True``/``False`` when the brute-force bound allows a verdict, else ``None``."""
    if len(inst.nodes) > (game.max_nodes() if limit is None else limit):
        return None
    if not is_tree_projection(ha, inst):
        return False
    best = brute_force_tp(TPInstance(inst.h1, ha), limit=len(inst.nodes))
    return best is not None and set(best.edges) == set(ha.edges) and ha.covered == inst.nodes


# normal-form join trees --------------------------------------------------------

def construct_component_tree(ha: Hypergraph, h1ref: Hypergraph, root) -> Optional[JoinTree]:
    """Join tree of ``ha`` rooted at ``root`` that is an ``h1ref``-component tree.

    Recursive backtracking: below ``h_r``, the hyperedges still to place are
    grouped by the [h_r]-component they meet; each group needs a child ``h_s``
    meeting its component ``C`` and inside ``Fr(C)``, whose own subtree spans
    exactly ``C | (h_s & h_r)``.
    """
    root = frozenset(root)
    if not is_reduced(ha):
        raise ValueError("ha must be reduced")
    if not is_acyclic(ha):
        raise ValueError("ha must be acyclic")
    if root not in set(ha.edges):
        raise ValueError("root must be a hyperedge of ha")
    ref = h1ref
    if ha.covered != ref.nodes:
        raise ValueError("ha and h1ref must span the same nodes")

    def build(hr, ctop, pool):
        """Return list of (parent_edge, child_edge) links or None."""
        sep = ref.mask_within(hr)
        cmask = ref.mask_within(ctop)
        comps = [ref.members(c) for c in ref._components(sep) if c & cmask == c]
        groups = {c: [] for c in comps}
        for e in pool:
            hit = [c for c in comps if e & c]
            if len(hit) != 1:
                return None
            groups[hit[0]].append(e)
        links = []
        for c in comps:
            grp = groups[c]
            fr = ref.members(ref._frontier(ref.mask(c)))
            found = None
            for hs in grp:
                if not (hs & c) or not hs <= fr:
                    continue
                rest = [e for e in grp if e != hs]
                span = frozenset().union(hs, *rest)
                if span != c | (hs & hr):
                    continue
                sub = build(hs, c, rest)
                if sub is not None:
                    found = [(hr, hs)] + sub
                    break
            if found is None:
                return None
            links.extend(found)
        return links

    links = build(root, ref.nodes, [e for e in ha.edges if e != root])
    if links is None:
        return None
    verts = [root] + [c for _, c in links]
    idx = {v: i for i, v in enumerate(verts)}
    parent = [None] * len(verts)
    for p, c in links:
        parent[idx[c]] = idx[p]
    jt = JoinTree(verts, parent)
    if not verify_join_tree(ha, jt):
        return None
    return jt


@dataclass
class TPReport:
    """Necessary conditions for ⊂-minimality, each recomputed from scratch.

    A false flag proves the projection is not minimal; all flags true does
    not prove minimality.  ``certified_minimal`` is the brute-force verdict
    when the instance is small enough, else ``None``.
    """

    valid: bool
    reduced: bool
    nodes_preserved: bool
    components_preserved: bool
    h1_connected_all_roots: bool
    normal_form_witnesses: dict = field(default_factory=dict)
    certified_minimal: Optional[bool] = None
    notes: list = field(default_factory=list)

    @property
    def all_flags(self) -> bool:
        return (self.valid and self.reduced and self.nodes_preserved and self.components_preserved
                and self.h1_connected_all_roots
                and all(isinstance(w, JoinTree) for w in self.normal_form_witnesses.values()))


def check_minimality_conditions(ha: Hypergraph, inst: TPInstance, certify: bool = True) -> TPReport:
    h1 = inst.h1
    valid = is_tree_projection(ha, inst)
    reduced = is_reduced(ha)
    nodes_ok = ha.covered == h1.nodes and ha.nodes <= h1.nodes | ha.covered
    comps_ok = nodes_ok
    notes = ["all flags true is necessary for minimality, not sufficient"]
    if nodes_ok:
        same = Hypergraph(ha.edges, h1.nodes)
        for h in ha.edges:
            a = {c.members for c in v_components(same, h)}
            b = {c.members for c in v_components(h1, h)}
            if a != b:
                comps_ok = False
                notes.append(f"[{_fmt(h)}]-components differ between ha and h1")
                break
    connected = False
    witnesses: dict = {}
    split = len(h1._components(0)) > 1
    if split:
        notes.append("h1 is disconnected: connectedness is checked inside each of its components")
    if valid and reduced and nodes_ok:
        jt = build_join_tree(Hypergraph(ha.edges))
        connected = True
        for i in range(len(jt.vertices)):
            try:
                check_h1_connected(jt.rerooted(i), h1, split)
            except ConnectednessError as exc:
                connected = False
                notes.append(str(exc))
                break
        for h in ha.edges:
            tree = construct_component_tree(Hypergraph(ha.edges), h1, h)
            if tree is None:
                witnesses[h] = "no component tree rooted here"
                continue
            try:
                check_component_tree(tree, h1)
                check_h1_connected(tree, h1, split)
                witnesses[h] = tree
            except (ComponentTreeError, ConnectednessError) as exc:
                witnesses[h] = str(exc)
    else:
        notes.append("join-tree checks need a valid, reduced projection on nodes(h1)")
    cert = certify_minimal(ha, inst) if certify and valid else None
    return TPReport(valid, reduced, nodes_ok, comps_ok, connected, witnesses, cert, notes)


def tp_to_strategy(ha: Hypergraph, inst: TPInstance, root=None) -> game.GameTree:
    """Monotone winning strategy read off a normal-form join tree of ``ha``.

    ``ha`` is minimized first when it has no component tree at ``root``
    (lexicographically least hyperedge by default).
    """
    check_tree_projection(ha, inst)
    h1 = inst.h1
    cand = _trim(reduce(ha), inst.nodes)
    r = frozenset(root) if root is not None else (cand.edges[0] if cand.edges else None)
    jt = None
    if r is not None and r in set(cand.edges):
        jt = construct_component_tree(cand, h1, r)
    if jt is None:
        cand = minimize(cand, inst)
        if r is None or r not in set(cand.edges):
            r = cand.edges[0]
        jt = construct_component_tree(cand, h1, r)
    if jt is None:
        raise ValueError("no normal-form join tree found")
    top = check_component_tree(jt, h1)
    children = jt.children()

    def squad(e):
        return next(f for f in inst.h2.edges if e <= f)

    def node(v, comp):
        """Vertex reached by moving onto join-tree vertex ``v`` with the Robber in ``comp``."""
        cops = jt.vertices[v]
        out = game.GameNode(cops, squad(cops), comp)
        if not comp:
            return out
        by_comp = {top[s]: s for s in children[v]}
        nxt = by_comp[comp]
        mv = jt.vertices[nxt]
        esc = game.robber_components(h1, out.config, mv)
        if esc:
            out.children = [node(nxt, x.members) for x in esc]
        else:
            out.children = [game.GameNode(mv, squad(mv), ())]
        return out

    root_v = jt.root
    start = game.GameNode((), None, h1.nodes)
    first = jt.vertices[root_v]
    esc = game.robber_components(h1, start.config, first)
    if esc:
        start.children = [node(root_v, x.members) for x in esc]
    else:
        start.children = [game.GameNode(first, squad(first), ())]
    return game.GameTree(start)


# width deciders ----------------------------------------------------------------

def _cover(bag: frozenset, edges, k: int):
    useful = [e for e in edges if e & bag]
    for j in range(1, k + 1):
        for combo in itertools.combinations(useful, j):
            if bag <= frozenset().union(*combo):
                return combo
    return None


def ghw_decide(h: Hypergraph, k: int) -> Optional[HypertreeDecomposition]:
    """Generalized hypertree decomposition of width at most ``k``, or ``None``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not h.edges:
        return HypertreeDecomposition((), (), ())
    inst = TPInstance(h, power_k(h, k))
    tp = find_tp(inst)
    if tp is None:
        return None
    tp = reduce(tp)
    jt = build_join_tree(Hypergraph(tp.edges))
    covers = []
    for b in jt.vertices:
        c = _cover(b, h.edges, k)
        assert c is not None
        covers.append(c)
    return HypertreeDecomposition(jt.vertices, covers, jt.parent)


def tw_decide(h: Hypergraph, k: int, limit: Optional[int] = None) -> Optional[TreeDecomposition]:
    """Tree decomposition of width at most ``k``, or ``None``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    bound = game.max_nodes() if limit is None else limit
    if len(h.nodes) > bound:
        raise ValueError(f"tw_decide is limited to {bound} nodes, got {len(h.nodes)}")
    bags: list = []
    parent: list = []
    if h.edges:
        inst = TPInstance(h, clusters_tk(h, k))
        tp = find_tp(inst)
        if tp is None:
            return None
        jt = build_join_tree(Hypergraph(reduce(tp).edges))
        bags, parent = list(jt.vertices), list(jt.parent)
    for x in sorted(h.nodes - h.covered):
        bags.append(frozenset([x]))
        parent.append(0 if parent else None)
    return TreeDecomposition(bags, parent)
