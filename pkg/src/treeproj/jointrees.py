"""Join trees, acyclicity and decomposition validators.

Trees are stored as parallel tuples: ``vertices[i]`` (or ``bags[i]``) is the
label of vertex ``i`` and ``parent[i]`` its parent index, ``None`` at the
root.  Checkers come in pairs: ``check_*`` raises a :class:`~treeproj.errors.Violation`
describing the first failure in a deterministic traversal, ``is_*`` /
``verify_*`` wrap it into a boolean (or a width).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ComponentTreeError, ConnectednessError, DecompositionError, JoinTreeError
from .hypergraph import Hypergraph, frontier, gaifman, induced_is_connected, is_reduced


def _fmt(nodes) -> str:
    return "{" + ",".join(sorted(nodes)) + "}"


def _tree_shape(parent: Sequence[Optional[int]], err=JoinTreeError):
    """Validate a parent array; return (root, children lists, BFS order)."""
    n = len(parent)
    if n == 0:
        return None, [], []
    roots = [i for i, p in enumerate(parent) if p is None]
    if len(roots) != 1:
        raise err(f"expected exactly one root, found {len(roots)}", "tree", tuple(roots))
    children = [[] for _ in range(n)]
    for i, p in enumerate(parent):
        if p is None:
            continue
        if not (0 <= p < n) or p == i:
            raise err(f"vertex {i} has invalid parent {p}", "tree", i)
        children[p].append(i)
    order = [roots[0]]
    for i in order:
        order.extend(children[i])
    if len(order) != n:
        stray = sorted(set(range(n)) - set(order))
        raise err(f"vertices {stray} are not connected to the root", "tree", tuple(stray))
    return roots[0], children, order


def _subtree_labels(labels, children, order) -> list[frozenset]:
    """Union of labels below (and including) each vertex."""
    below = [frozenset(x) for x in labels]
    for i in reversed(order):
        for c in children[i]:
            below[i] = below[i] | below[c]
    return below


def _connected_occurrences(labels, parent, order, node) -> bool:
    tops = [i for i in order if node in labels[i] and (parent[i] is None or node not in labels[parent[i]])]
    return len(tops) <= 1


@dataclass(frozen=True)
class JoinTree:
    """Rooted tree whose vertices are hyperedges."""

    vertices: tuple
    parent: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(frozenset(v) for v in self.vertices))
        object.__setattr__(self, "parent", tuple(self.parent))
        if len(self.vertices) != len(self.parent):
            raise ValueError("vertices and parent must have equal length")

    @property
    def root(self) -> Optional[int]:
        for i, p in enumerate(self.parent):
            if p is None:
                return i
        return None

    def children(self) -> list[list[int]]:
        _, children, _ = _tree_shape(self.parent)
        return children

    def neighbours(self) -> list[list[int]]:
        adj = [[] for _ in self.vertices]
        for i, p in enumerate(self.parent):
            if p is not None:
                adj[i].append(p)
                adj[p].append(i)
        return adj

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(p, i) for i, p in enumerate(self.parent) if p is not None]

    def rerooted(self, new_root: int) -> "JoinTree":
        adj = self.neighbours()
        parent: list = [None] * len(self.vertices)
        seen = {new_root}
        stack = [new_root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    parent[w] = u
                    stack.append(w)
        return JoinTree(self.vertices, tuple(parent))

    def subtree_nodes(self) -> list[frozenset]:
        """``nodes(JT_v)`` for every vertex ``v`` under the current rooting."""
        _, children, order = _tree_shape(self.parent)
        return _subtree_labels(self.vertices, children, order)

    def hypergraph(self, nodes=None) -> Hypergraph:
        return Hypergraph(self.vertices, nodes)

    def index_of(self, edge) -> int:
        return self.vertices.index(frozenset(edge))


# acyclicity ----------------------------------------------------------------

def build_join_tree(h: Hypergraph, root=None) -> Optional[JoinTree]:
    """GYO ear removal with join-tree recovery; ``None`` when ``h`` is cyclic.

    An ear is a hyperedge whose nodes shared with the remaining hyperedges all
    sit inside one of them (the witness, which becomes its parent).
    """
    edges = list(h.edges)
    n = len(edges)
    if n == 0:
        return JoinTree((), ())
    alive = list(range(n))
    parent: list = [None] * n
    while len(alive) > 1:
        found = False
        for i in alive:
            others = [j for j in alive if j != i]
            rest = frozenset().union(*(edges[j] for j in others))
            shared = edges[i] & rest
            for j in others:
                if shared <= edges[j]:
                    parent[i] = j
                    alive.remove(i)
                    found = True
                    break
            if found:
                break
        if not found:
            return None
    jt = JoinTree(edges, tuple(parent))
    if root is not None:
        jt = jt.rerooted(jt.index_of(root))
    return jt


def is_acyclic(h: Hypergraph) -> bool:
    return build_join_tree(h) is not None


def check_join_tree(h: Hypergraph, jt: JoinTree) -> None:
    _, _, order = _tree_shape(jt.parent)
    verts = list(jt.vertices)
    if len(set(verts)) != len(verts):
        dup = next(v for v in verts if verts.count(v) > 1)
        raise JoinTreeError(f"hyperedge {_fmt(dup)} labels two vertices", "bijection", dup)
    extra = [v for v in verts if v not in set(h.edges)]
    if extra:
        raise JoinTreeError(f"vertex {_fmt(extra[0])} is not a hyperedge", "bijection", extra[0])
    missing = [e for e in h.edges if e not in set(verts)]
    if missing:
        raise JoinTreeError(f"hyperedge {_fmt(missing[0])} has no vertex", "bijection", missing[0])
    for x in sorted(frozenset().union(*verts) if verts else ()):
        if not _connected_occurrences(verts, jt.parent, order, x):
            raise JoinTreeError(f"occurrences of node {x} are disconnected", "connectedness", x)


def verify_join_tree(h: Hypergraph, jt: JoinTree) -> bool:
    try:
        check_join_tree(h, jt)
    except JoinTreeError:
        return False
    return True


# structural predicates on join trees ---------------------------------------

def _owner_preconditions(jt: JoinTree, h1: Hypergraph) -> None:
    owner = Hypergraph(jt.vertices)
    if not is_reduced(owner):
        raise ValueError("join tree owner must be a reduced hypergraph")
    if owner.covered != h1.nodes:
        raise ValueError("join tree owner and h1 must have the same node set")


def check_component_tree(jt: JoinTree, h1: Hypergraph) -> dict:
    """Raise :class:`ComponentTreeError` unless ``jt`` is an ``h1``-component tree.

    Returns the ``C_top`` labelling (vertex index -> component) on success.
    """
    _owner_preconditions(jt, h1)
    root, children, order = _tree_shape(jt.parent)
    if root is None:
        return {}
    below = _subtree_labels(jt.vertices, children, order)
    top = {root: h1.nodes}
    for r in order:
        hr = jt.vertices[r]
        sep = h1.mask_within(hr)
        for s in children[r]:
            hs = jt.vertices[s]
            cand = below[s] - hr
            ok = False
            if cand:
                cmask = h1.mask(cand)
                ok = h1._component_of(cmask & -cmask, sep) == cmask
            if not ok or below[s] != cand | (hs & hr):
                raise ComponentTreeError(
                    f"subtree at {_fmt(hs)} under {_fmt(hr)} matches no [{_fmt(hr)}]-component",
                    "subtrees->components", (hr, hs))
            if not hs & cand:
                raise ComponentTreeError(f"{_fmt(hs)} misses its component {_fmt(cand)}",
                                         "subtrees->components", (hr, hs))
            fr = frontier(h1, cand)
            if not hs <= fr:
                raise ComponentTreeError(
                    f"{_fmt(hs)} is not inside Fr({_fmt(cand)}) = {_fmt(fr)}",
                    "subtrees->components", (hr, hs))
            top[s] = cand
        mine = h1.mask_within(top[r])
        for c in h1._components(sep):
            if c & ~mine:
                continue
            comp = h1.members(c)
            hits = [s for s in children[r] if top[s] == comp]
            if len(hits) != 1:
                raise ComponentTreeError(
                    f"[{_fmt(hr)}]-component {_fmt(comp)} has {len(hits)} matching children",
                    "components->subtrees", (hr, comp))
    return top


def is_component_tree(jt: JoinTree, h1: Hypergraph) -> bool:
    try:
        check_component_tree(jt, h1)
    except ComponentTreeError:
        return False
    return True


def check_h1_connected(jt: JoinTree, h1: Hypergraph, per_component: bool = False) -> None:
    """Both sides of every tree edge must induce a connected sub-hypergraph of ``h1``.

    With ``per_component`` each side is only required to be connected inside
    every connected component of ``h1`` (the same test when ``h1`` is connected).
    """
    _owner_preconditions(jt, h1)
    parts = [h1.members(c) for c in h1._components(0)] if per_component else [h1.nodes]
    _, children, order = _tree_shape(jt.parent)
    below = _subtree_labels(jt.vertices, children, order)
    for s in order:
        p = jt.parent[s]
        if p is None:
            continue
        above = frozenset().union(*(jt.vertices[i] for i in order if not _is_below(jt.parent, i, s)))
        for hr, hs, side in ((p, s, below[s]), (s, p, above)):
            if not all(induced_is_connected(h1, side & part) for part in parts):
                raise ConnectednessError(
                    f"side of {_fmt(jt.vertices[hs])} across the edge from {_fmt(jt.vertices[hr])} is disconnected",
                    "h1-connected", (jt.vertices[hr], jt.vertices[hs]))


def _is_below(parent, i, s) -> bool:
    while i is not None:
        if i == s:
            return True
        i = parent[i]
    return False


def is_h1_connected(jt: JoinTree, h1: Hypergraph, per_component: bool = False) -> bool:
    try:
        check_h1_connected(jt, h1, per_component)
    except ConnectednessError:
        return False
    return True


def is_normal_form(jt: JoinTree, h1: Hypergraph, per_component: bool = False) -> bool:
    return is_h1_connected(jt, h1, per_component) and is_component_tree(jt, h1)


# tree and hypertree decompositions -----------------------------------------

@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple
    parent: tuple

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "parent", tuple(self.parent))

    @property
    def width(self) -> int:
        return max((len(b) - 1 for b in self.bags), default=0)


@dataclass(frozen=True)
class HypertreeDecomposition:
    """``(T, chi, lambda)``; ``covers[i]`` is the set of hyperedges ``lambda(i)``."""

    bags: tuple
    covers: tuple
    parent: tuple

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "covers", tuple(frozenset(frozenset(e) for e in c) for c in self.covers))
        object.__setattr__(self, "parent", tuple(self.parent))
        if not len(self.bags) == len(self.covers) == len(self.parent):
            raise ValueError("bags, covers and parent must have equal length")

    @property
    def width(self) -> int:
        return max((len(c) for c in self.covers), default=0)

    @property
    def root(self) -> Optional[int]:
        return next((i for i, p in enumerate(self.parent) if p is None), None)


def _check_bag_connectedness(bags, parent, order, nodes, condition):
    for y in sorted(nodes):
        if not _connected_occurrences(bags, parent, order, y):
            raise DecompositionError(f"condition {condition} violated at node {y}", condition, y)


def verify_tree_decomposition(g: Hypergraph, td: TreeDecomposition) -> int:
    """Check conditions (1)-(3) against the Gaifman graph of ``g``; return the width."""
    _, _, order = _tree_shape(td.parent, DecompositionError)
    bags = td.bags
    for y in sorted(g.nodes):
        if not any(y in b for b in bags):
            raise DecompositionError(f"condition 1 violated: node {y} is in no bag", 1, y)
    for e in gaifman(g).edges:
        if not any(e <= b for b in bags):
            raise DecompositionError(f"condition 2 violated: edge {_fmt(e)} uncovered", 2, e)
    _check_bag_connectedness(bags, td.parent, order, frozenset().union(*bags) if bags else (), 3)
    return td.width


def verify_hypertree_decomposition(h: Hypergraph, hd: HypertreeDecomposition, generalized: bool = False) -> int:
    """Check (1)-(3), plus (4) unless ``generalized``; return ``max |lambda(p)|``."""
    _, children, order = _tree_shape(hd.parent, DecompositionError)
    edges = set(h.edges)
    for i, cover in enumerate(hd.covers):
        for e in cover:
            if e not in edges:
                raise ValueError(f"lambda of vertex {i} uses {_fmt(e)}, which is not a hyperedge")
    bags = hd.bags
    for e in h.edges:
        if not any(e <= b for b in bags):
            raise DecompositionError(f"condition 1 violated: hyperedge {_fmt(e)} uncovered", 1, e)
    _check_bag_connectedness(bags, hd.parent, order, frozenset().union(*bags) if bags else (), 2)
    for i in order:
        covered = frozenset().union(*hd.covers[i]) if hd.covers[i] else frozenset()
        if not bags[i] <= covered:
            x = min(bags[i] - covered)
            raise DecompositionError(f"condition 3 violated at vertex {i}: node {x} not covered by lambda", 3, (i, x))
    if not generalized:
        below = _subtree_labels(bags, children, order)
        for i in order:
            covered = frozenset().union(*hd.covers[i]) if hd.covers[i] else frozenset()
            bad = (covered & below[i]) - bags[i]
            if bad:
                x = min(bad)
                raise DecompositionError(f"condition 4 violated at vertex {i}: node {x}", 4, (i, x))
    return hd.width


def check_sh07_connected(hd: HypertreeDecomposition) -> None:
    """Single-edge root, and every lambda-edge of a child meets the shared bag part."""
    root, _, order = _tree_shape(hd.parent, DecompositionError)
    if root is None:
        return
    if len(hd.covers[root]) != 1:
        raise ConnectednessError(f"root lambda has {len(hd.covers[root])} hyperedges", "root", root)
    for s in order:
        p = hd.parent[s]
        if p is None:
            continue
        for e in sorted(hd.covers[s], key=lambda e: sorted(e)):
            if not e & hd.bags[s] & hd.bags[p]:
                raise ConnectednessError(
                    f"hyperedge {_fmt(e)} of vertex {s} misses chi({s}) & chi({p})", "child", (p, s, e))


def is_sh07_connected(hd: HypertreeDecomposition) -> bool:
    try:
        check_sh07_connected(hd)
    except ConnectednessError:
        return False
    return True


def hypertree_from_join_tree(jt: JoinTree) -> HypertreeDecomposition:
    """Width-1 decomposition with one vertex per join-tree vertex."""
    return HypertreeDecomposition(jt.vertices, [[v] for v in jt.vertices], jt.parent)
