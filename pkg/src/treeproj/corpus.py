"""Instance generators for the oracle suites."""

from __future__ import annotations

import itertools
import os
import random

from .formats import format_hypergraph
from .hypergraph import Hypergraph

NAMES = "ABCDEFGHIJ"


def antichains(nodes: str = "ABCD", max_edge: int = 3):
    """Every non-empty reduced hypergraph whose edges are subsets of ``nodes`` of size <= ``max_edge``."""
    cands = [frozenset(c) for k in range(1, max_edge + 1) for c in itertools.combinations(nodes, k)]
    out = []

    def grow(start, chosen):
        if chosen:
            out.append(tuple(chosen))
        for i in range(start, len(cands)):
            c = cands[i]
            if all(not (c <= d or d <= c) for d in chosen):
                chosen.append(c)
                grow(i + 1, chosen)
                chosen.pop()

    grow(0, [])
    return [Hypergraph(edges) for edges in out]


def _canon(h1: Hypergraph, h2: Hypergraph, nodes: str):
    best = None
    for perm in itertools.permutations(nodes):
        m = dict(zip(nodes, perm))
        key = (tuple(sorted(tuple(sorted(m[x] for x in e)) for e in h1.edges)),
               tuple(sorted(tuple(sorted(m[x] for x in e)) for e in h2.edges)))
        if best is None or key < best:
            best = key
    return best


def exhaustive_pairs(nodes: str = "ABCD", max_edge: int = 3):
    """All pairs of reduced hypergraphs on ``nodes``, one per relabeling class."""
    fam = antichains(nodes, max_edge)
    seen = set()
    out = []
    for h1 in fam:
        for h2 in fam:
            key = _canon(h1, h2, nodes)
            if key in seen:
                continue
            seen.add(key)
            out.append((h1, h2))
    return out


def random_hypergraph(rng: random.Random, max_nodes: int = 7, max_edges: int = 6, max_edge: int = 4,
                      min_nodes: int = 2) -> Hypergraph:
    n = rng.randint(min_nodes, max_nodes)
    nodes = NAMES[:n]
    edges = [frozenset(rng.sample(nodes, rng.randint(1, min(max_edge, n))))
             for _ in range(rng.randint(1, max_edges))]
    return Hypergraph(edges)


def random_pair(rng: random.Random, max_nodes: int = 7, max_edges: int = 6, max_edge: int = 4):
    """A random ``(h1, h2)``; ``h2`` usually covers ``h1`` so that both answers show up."""
    h1 = random_hypergraph(rng, max_nodes, max_edges, max_edge)
    nodes = sorted(h1.nodes)
    edges = [frozenset(rng.sample(nodes, rng.randint(1, min(max_edge, len(nodes)))))
             for _ in range(rng.randint(1, max_edges))]
    if rng.random() < 0.8:
        for e in h1.edges:
            if not any(e <= f for f in edges) and len(edges) < max_edges + len(h1.edges):
                extra = [x for x in nodes if x not in e]
                grow = rng.randint(0, max(0, min(max_edge - len(e), len(extra))))
                edges.append(e | frozenset(rng.sample(extra, grow)))
    return h1, Hypergraph(edges)


def random_pairs(seed: int, count: int, **bounds):
    rng = random.Random(seed)
    return [random_pair(rng, **bounds) for _ in range(count)]


def gen_corpus(seed: int, out_dir: str, count: int = 50, exhaustive: bool = False,
               max_nodes: int = 7, max_edges: int = 6, max_edge: int = 4) -> list:
    """Write instance pairs as ``<stem>.h1.hg`` / ``<stem>.h2.hg``; return the paths written."""
    os.makedirs(out_dir, exist_ok=True)
    pairs = [("rand%04d" % i, p) for i, p in
             enumerate(random_pairs(seed, count, max_nodes=max_nodes, max_edges=max_edges, max_edge=max_edge))]
    if exhaustive:
        pairs += [("exh%05d" % i, p) for i, p in enumerate(exhaustive_pairs())]
    paths = []
    for stem, (h1, h2) in pairs:
        for tag, h in (("h1", h1), ("h2", h2)):
            path = os.path.join(out_dir, f"{stem}.{tag}.hg")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(format_hypergraph(h))
            paths.append(path)
    return paths
