"""Hypergraphs over named nodes, plus the connectivity notions used everywhere
else in the package: [V]-adjacency, [V]-components, frontiers and borders.

Node sets are handed around as ``frozenset`` of strings.  Internally every
hypergraph keeps a dense index of its nodes so that the hot loops (component
search, frontier computation) run on Python ints used as bitsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Mapping, Optional

NodeSet = frozenset


def _key(edge) -> tuple:
    return tuple(sorted(edge))


def sort_edges(edges: Iterable[frozenset]) -> list[frozenset]:
    """Deterministic edge order: lexicographic on the sorted member tuple."""
    return sorted(edges, key=_key)


class Hypergraph:
    """A finite hypergraph ``(V, H)``.

    Duplicate hyperedges collapse to one; hyperedges that are proper subsets
    of others are kept (use :func:`reduce` to drop them).  Isolated nodes are
    allowed.  ``names`` optionally maps hyperedges to labels, which the text
    and JSON formats use to refer to them.
    """

    __slots__ = ("nodes", "edges", "names", "order", "index", "masks", "_full")

    def __init__(self, edges: Iterable[Iterable[str]], nodes: Optional[Iterable[str]] = None,
                 names: Optional[Mapping[frozenset, str]] = None):
        seen = set()
        clean = []
        for e in edges:
            e = frozenset(e)
            if not e:
                raise ValueError("hyperedges must be non-empty")
            if e not in seen:
                seen.add(e)
                clean.append(e)
        covered = frozenset().union(*clean) if clean else frozenset()
        if nodes is None:
            node_set = covered
        else:
            node_set = frozenset(nodes)
            missing = covered - node_set
            if missing:
                raise ValueError(f"hyperedge members missing from node set: {sorted(missing)}")
        self.nodes: frozenset = node_set
        self.edges: tuple = tuple(sort_edges(clean))
        self.names: dict = {}
        if names:
            for e, n in names.items():
                e = frozenset(e)
                if e in seen and e not in self.names:
                    self.names[e] = n
        self.order: tuple = tuple(sorted(node_set))
        self.index: dict = {x: i for i, x in enumerate(self.order)}
        self.masks: tuple = tuple(self.mask(e) for e in self.edges)
        self._full = (1 << len(self.order)) - 1

    # bitset helpers ----------------------------------------------------

    def mask(self, nodes: Iterable[str]) -> int:
        m = 0
        idx = self.index
        for x in nodes:
            try:
                m |= 1 << idx[x]
            except KeyError:
                raise ValueError(f"unknown node {x!r}") from None
        return m

    def mask_within(self, nodes: Iterable[str]) -> int:
        """Like :meth:`mask` but silently ignores nodes outside the hypergraph."""
        m = 0
        idx = self.index
        for x in nodes:
            i = idx.get(x)
            if i is not None:
                m |= 1 << i
        return m

    def members(self, mask: int) -> frozenset:
        out = []
        order = self.order
        while mask:
            low = mask & -mask
            out.append(order[low.bit_length() - 1])
            mask ^= low
        return frozenset(out)

    @property
    def full_mask(self) -> int:
        return self._full

    # basic accessors ---------------------------------------------------

    @property
    def covered(self) -> frozenset:
        """Nodes occurring in at least one hyperedge."""
        return frozenset().union(*self.edges) if self.edges else frozenset()

    def name_of(self, edge) -> str:
        edge = frozenset(edge)
        if edge in self.names:
            return self.names[edge]
        return "e" + str(self.edges.index(edge) + 1)

    def edge_by_name(self, name: str) -> frozenset:
        for e in self.edges:
            if self.name_of(e) == name:
                return e
        raise KeyError(name)

    def with_edges(self, edges: Iterable[Iterable[str]], nodes=None) -> "Hypergraph":
        """New hypergraph on the same node set (unless given) carrying over known names."""
        return Hypergraph(edges, self.nodes if nodes is None else nodes, self.names)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[frozenset]:
        return iter(self.edges)

    def __contains__(self, edge) -> bool:
        return frozenset(edge) in set(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.nodes == other.nodes and set(self.edges) == set(other.edges)

    def __hash__(self) -> int:
        return hash((self.nodes, frozenset(self.edges)))

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(sorted(e)) + "}" for e in self.edges)
        extra = sorted(self.nodes - self.covered)
        if extra:
            return f"Hypergraph([{body}], isolated={extra})"
        return f"Hypergraph([{body}])"

    # fast internals ------------------------------------------------------

    def _component_of(self, start: int, sep: int) -> int:
        """Bitset of the [sep]-component containing node bit ``start``."""
        comp = start
        live = [m & ~sep for m in self.masks]
        live = [m for m in live if m]
        changed = True
        while changed:
            changed = False
            rest = []
            for m in live:
                if m & comp:
                    if m & ~comp:
                        comp |= m
                        changed = True
                else:
                    rest.append(m)
            live = rest
        return comp

    def _components(self, sep: int, universe: Optional[int] = None) -> list[int]:
        """[sep]-components as bitsets, ordered by least node."""
        todo = (self._full if universe is None else universe) & ~sep
        live = [m & ~sep for m in self.masks]
        live = [m for m in live if m]
        out = []
        while todo:
            comp = todo & -todo
            changed = True
            while changed:
                changed = False
                rest = []
                for m in live:
                    if m & comp:
                        comp |= m
                        changed = True
                    else:
                        rest.append(m)
                live = rest
            out.append(comp)
            todo &= ~comp
        return out

    def _frontier(self, c: int) -> int:
        fr = 0
        for m in self.masks:
            if m & c:
                fr |= m
        return fr


@dataclass(frozen=True)
class Component:
    """A maximal [separator]-connected set of nodes."""

    members: frozenset
    separator: frozenset

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)


# orderings ---------------------------------------------------------------

def leq(h1: Hypergraph, h2: Hypergraph) -> bool:
    """``h1 <= h2``: every hyperedge of ``h1`` lies inside some hyperedge of ``h2``."""
    return all(any(e <= f for f in h2.edges) for e in h1.edges)


def contained_in(h: Hypergraph, h2: Hypergraph) -> bool:
    """Hypergraph containment ``h ⊆ h2``.

    Every hyperedge of ``h`` missing from ``h2`` must be a proper subset of a
    hyperedge of ``h2`` that is missing from ``h``.
    """
    e1, e2 = set(h.edges), set(h2.edges)
    only2 = e2 - e1
    return all(any(e < f for f in only2) for e in e1 - e2)


def properly_contained(h: Hypergraph, h2: Hypergraph) -> bool:
    return contained_in(h, h2) and set(h.edges) != set(h2.edges)


def is_reduced(h: Hypergraph) -> bool:
    return all(not (e < f) for e in h.edges for f in h.edges)


def reduce(h: Hypergraph) -> Hypergraph:
    """Drop every hyperedge that is a proper subset of another one."""
    keep = [e for e in h.edges if not any(e < f for f in h.edges)]
    return h.with_edges(keep)


def gaifman(h: Hypergraph) -> Hypergraph:
    pairs = set()
    for e in h.edges:
        for x, y in itertools.combinations(sorted(e), 2):
            pairs.add(frozenset((x, y)))
    return Hypergraph(pairs, h.nodes)


# connectivity ------------------------------------------------------------

def v_components(h: Hypergraph, v: Iterable[str] = ()) -> list[Component]:
    """Partition ``nodes(h) - v`` into its [v]-components, ordered by least node.

    Nodes outside every hyperedge end up as singleton components.
    """
    v = frozenset(v)
    sep = h.mask_within(v)
    return [Component(h.members(c), v) for c in h._components(sep)]


def frontier(h: Hypergraph, c: Iterable[str]) -> frozenset:
    """Union of all hyperedges meeting ``c``."""
    return h.members(h._frontier(h.mask_within(c)))


def border(h: Hypergraph, c: Iterable[str]) -> frozenset:
    c = frozenset(c)
    return frontier(h, c) - c


def v_path_exists(h: Hypergraph, v: Iterable[str], x: str, y: str) -> bool:
    v = frozenset(v)
    if x in v or y in v:
        raise ValueError("path endpoints must lie outside the separator")
    if x == y:
        return True
    sep = h.mask_within(v)
    comp = h._component_of(h.mask((x,)), sep)
    return bool(comp & h.mask((y,)))


def touches(h: Hypergraph, v: Iterable[str], x: str, w: Iterable[str]) -> bool:
    """Does ``x`` [v]-touch the node set ``w``?

    ``x`` must share a hyperedge with some ``z`` from which a [v]-path leads
    into ``w`` (the empty path counts when ``z`` is already in ``w``).
    """
    w_mask = h.mask_within(w)
    if not w_mask:
        return False
    sep = h.mask_within(v)
    xb = h.mask((x,))
    near = 0
    for m in h.masks:
        if m & xb:
            near |= m
    if near & w_mask:
        return True
    target = w_mask & ~sep
    cand = near & ~sep
    while cand:
        z = cand & -cand
        comp = h._component_of(z, sep)
        if comp & target:
            return True
        cand &= ~comp
    return False


def induced_is_connected(h: Hypergraph, s: Iterable[str]) -> bool:
    """Is the sub-hypergraph with edges ``{e & s}`` connected on node set ``s``?"""
    sm = h.mask_within(s)
    if not sm:
        return True
    outside = h.full_mask & ~sm
    return len(h._components(outside)) == 1


# resource hypergraphs ----------------------------------------------------

def power_k(h: Hypergraph, k: int) -> Hypergraph:
    """``H^k``: unions of at most ``k`` hyperedges of ``h``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    unions = set()
    edges = h.edges
    for j in range(1, min(k, len(edges)) + 1):
        for combo in itertools.combinations(edges, j):
            unions.add(frozenset().union(*combo))
    return Hypergraph(unions, h.nodes)


def clusters_tk(h: Hypergraph, k: int) -> Hypergraph:
    """``H^tk``: every non-empty cluster of at most ``k + 1`` nodes."""
    if k < 0:
        raise ValueError("k must be non-negative")
    order = sorted(h.nodes)
    out = []
    for size in range(1, min(k + 1, len(order)) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(order, size))
    return Hypergraph(out, h.nodes)


def clusters_tk_size(n: int, k: int) -> int:
    return sum(comb(n, i) for i in range(1, k + 2))
