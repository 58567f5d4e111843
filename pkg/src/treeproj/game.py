"""The Robber and Captain game on a pair (h1, h2).

The Captain controls squads of cops, one squad per hyperedge of ``h2``; the
Robber lives in a component of ``h1``.  Play is modelled in the component
form: a configuration is ``(M, C)`` with ``C`` an [M]-component (``C`` empty
once the Robber is caught, all of ``nodes(h1)`` at the start).

Strategies are explicit game trees.  Every vertex stores its configuration
and the squad used for the move that created it; the Captain's move at a
vertex is the cop set shared by all its children.

Nodes of ``h1`` that lie in no hyperedge are left out of the arena: the
Robber could never be caught there, and they impose nothing on a tree
projection.
"""

from __future__ import annotations

import os
import random
import warnings
from dataclasses import dataclass
from typing import Optional, Union

from .errors import StrategyError
from .hypergraph import Component, Hypergraph, leq

DEFAULT_MAX_NODES = 12


def max_nodes() -> int:
    try:
        return int(os.environ.get("TPJ_MAX_NODES", DEFAULT_MAX_NODES))
    except ValueError:
        return DEFAULT_MAX_NODES


def _fmt(nodes) -> str:
    return "{" + ",".join(sorted(nodes)) + "}"


@dataclass(frozen=True)
class Position:
    cops: frozenset
    squad: Optional[frozenset] = None

    def __post_init__(self):
        object.__setattr__(self, "cops", frozenset(self.cops))
        if self.squad is not None:
            object.__setattr__(self, "squad", frozenset(self.squad))
            if not self.cops <= self.squad:
                raise ValueError("cops must stand inside their squad")


@dataclass(frozen=True)
class Configuration:
    cops: frozenset
    component: frozenset

    def __post_init__(self):
        object.__setattr__(self, "cops", frozenset(self.cops))
        object.__setattr__(self, "component", frozenset(self.component))

    @property
    def is_capture(self) -> bool:
        return not self.component


def _cops(m) -> frozenset:
    if isinstance(m, Position):
        return m.cops
    return frozenset(m)


def arena(h1: Hypergraph) -> Hypergraph:
    """``h1`` without nodes outside every hyperedge."""
    if h1.nodes == h1.covered:
        return h1
    return Hypergraph(h1.edges, names=h1.names)


def initial(h1: Hypergraph) -> Configuration:
    return Configuration(frozenset(), arena(h1).nodes)


# one-step rules ------------------------------------------------------------

def _escape_masks(a: Hypergraph, c: int, m: int) -> list[int]:
    border = a._frontier(c) & ~c
    ed = border & ~m
    target = c | ed
    return [x for x in a._components(m) if x & target]


def escape_door(h1: Hypergraph, cfg: Configuration, m) -> frozenset:
    """``border(C) - M'``; equal to ``(M & Fr(C)) - M'`` for reachable configurations."""
    a = arena(h1)
    c = a.mask_within(cfg.component)
    fr = a._frontier(c)
    ed = a.members(fr & ~c & ~a.mask_within(_cops(m)))
    if cfg.cops:
        alt = (cfg.cops & a.members(fr)) - _cops(m)
        assert alt == ed, (alt, ed)
    return ed


def robber_components(h1: Hypergraph, cfg: Configuration, m) -> list[Component]:
    """Escape components after the move ``m``: the [m]-components meeting ``C | ED``."""
    a = arena(h1)
    cops = _cops(m)
    masks = _escape_masks(a, a.mask_within(cfg.component), a.mask_within(cops))
    return [Component(a.members(x), cops) for x in masks]


def robber_components_by_reachability(h1: Hypergraph, cfg: Configuration, m) -> list[Component]:
    """Escape components straight from the game rules: the [m]-components ``C'``
    such that ``C | C'`` is [M & m]-connected.  Meaningful for configurations
    whose component is connected (every one except a disconnected start)."""
    a = arena(h1)
    cops = _cops(m)
    c = a.mask_within(cfg.component)
    if not c:
        return []
    keep = a.mask_within(cfg.cops & cops)
    region = a._component_of(c & -c, keep)
    return [Component(a.members(x), cops) for x in a._components(a.mask_within(cops)) if x & region]


def legal_moves(h1: Hypergraph, h2: Hypergraph, cfg: Configuration) -> list[Position]:
    """Every non-empty ``M' <= squad & Fr(C)``, one Position per distinct cop set."""
    a = arena(h1)
    fr = a._frontier(a.mask_within(cfg.component))
    seen = {}
    for squad in h2.edges:
        base = a.mask_within(squad) & fr
        sub = base
        while sub:
            if sub not in seen:
                seen[sub] = squad
            sub = (sub - 1) & base
    out = [Position(a.members(m), sq) for m, sq in seen.items()]
    out.sort(key=lambda p: (sorted(p.cops), len(p.cops)))
    return out


# game trees ----------------------------------------------------------------

class GameNode:
    """A vertex ``(M, C)`` of a game tree.

    ``squad`` is the hyperedge of ``h2`` whose cops produced ``M`` (``None``
    at the root).  ``children`` all share the next move's cop set.
    """

    __slots__ = ("cops", "squad", "component", "children")

    def __init__(self, cops, squad, component, children=()):
        self.cops = frozenset(cops)
        self.squad = None if squad is None else frozenset(squad)
        self.component = frozenset(component)
        self.children = list(children)

    @property
    def config(self) -> Configuration:
        return Configuration(self.cops, self.component)

    @property
    def move(self) -> Optional[Position]:
        if not self.children:
            return None
        c = self.children[0]
        return Position(c.cops, c.squad)

    def walk(self):
        stack = [self]
        while stack:
            v = stack.pop()
            yield v
            stack.extend(reversed(v.children))

    def copy(self) -> "GameNode":
        return GameNode(self.cops, self.squad, self.component, [c.copy() for c in self.children])

    def __repr__(self):
        return f"GameNode({_fmt(self.cops)}, {_fmt(self.component)}, {len(self.children)} children)"


class GameTree:
    """Explicit strategy: the unfolded tree ``T(sigma)``."""

    def __init__(self, root: GameNode):
        self.root = root

    def vertices(self) -> list[GameNode]:
        return list(self.root.walk())

    def edges(self) -> list[tuple[GameNode, GameNode]]:
        return [(v, c) for v in self.root.walk() for c in v.children]

    def positions(self) -> list[frozenset]:
        """Distinct non-empty cop sets, in first-visit order."""
        out = []
        for v in self.root.walk():
            if v.cops and v.cops not in out:
                out.append(v.cops)
        return out

    def policy(self) -> Optional[dict]:
        """``{(M, C): Position}`` when the tree plays positionally, else ``None``."""
        pol = {}
        for v in self.root.walk():
            mv = v.move
            if mv is None:
                continue
            key = (v.cops, v.component)
            if key in pol and pol[key].cops != mv.cops:
                return None
            pol[key] = mv
        return pol

    def copy(self) -> "GameTree":
        return GameTree(self.root.copy())

    def __len__(self):
        return sum(1 for _ in self.root.walk())


Strategy = GameTree


def unfold(policy: dict, h1: Hypergraph, h2: Hypergraph) -> GameTree:
    """Game tree of a positional strategy ``{(M, C): Position-or-cops}``.

    A configuration repeating along a path means the Robber survives forever,
    which is reported as a :class:`StrategyError`.
    """
    a = arena(h1)
    norm = {}
    for (m, c), mv in policy.items():
        norm[(frozenset(m), frozenset(c))] = mv if isinstance(mv, Position) else Position(mv, _squad_for(h2, mv))

    def build(cops, squad, comp, path):
        node = GameNode(cops, squad, comp)
        if not comp:
            return node
        key = (node.cops, node.component)
        if key in path:
            raise StrategyError(f"configuration ({_fmt(cops)}, {_fmt(comp)}) repeats", "repetition", key)
        mv = norm.get(key)
        if mv is None:
            raise StrategyError(f"no move at ({_fmt(cops)}, {_fmt(comp)})", "undefined", key)
        comps = robber_components(a, node.config, mv)
        path = path | {key}
        if comps:
            node.children = [build(mv.cops, mv.squad, x.members, path) for x in comps]
        else:
            node.children = [GameNode(mv.cops, mv.squad, ())]
        return node

    root = initial(a)
    return GameTree(build(root.cops, None, root.component, frozenset()))


def _squad_for(h2: Hypergraph, cops) -> Optional[frozenset]:
    cops = frozenset(cops)
    for e in h2.edges:
        if cops <= e:
            return e
    return None


def _as_tree(s, h1, h2) -> GameTree:
    if isinstance(s, GameTree):
        return s
    if isinstance(s, dict):
        return unfold(s, h1, h2)
    raise TypeError("expected a GameTree or a positional policy dict")


def check_strategy(s: Union[GameTree, dict], h1: Hypergraph, h2: Hypergraph) -> None:
    """Raise :class:`StrategyError` unless ``s`` is a winning strategy."""
    a = arena(h1)
    tree = _as_tree(s, h1, h2)
    root = tree.root
    start = initial(a)
    if root.config != start:
        raise StrategyError("root is not the initial configuration", "root", root.config)
    squads = set(h2.edges)

    def visit(v: GameNode, path):
        if not v.component:
            if v.children:
                raise StrategyError("capture vertex has children", "capture", v.config)
            return
        key = (v.cops, v.component)
        if key in path:
            raise StrategyError(f"configuration ({_fmt(v.cops)}, {_fmt(v.component)}) repeats", "repetition", key)
        if not v.children:
            raise StrategyError(f"branch ends in ({_fmt(v.cops)}, {_fmt(v.component)}) without capture",
                                "non-terminating", key)
        moves = {(c.cops, c.squad) for c in v.children}
        if len(moves) != 1:
            raise StrategyError("children disagree on the move", "move", key)
        cops, squad = next(iter(moves))
        if squad is None:
            squad = _squad_for(h2, cops)
        if squad is None or squad not in squads or not cops <= squad:
            raise StrategyError(f"move {_fmt(cops)} fits no squad", "illegal move", (key, cops))
        fr = a.members(a._frontier(a.mask_within(v.component)))
        if not cops <= fr:
            raise StrategyError(f"move {_fmt(cops)} leaves Fr({_fmt(v.component)})", "illegal move", (key, cops))
        expect = sorted(sorted(x.members) for x in robber_components(a, v.config, cops)) or [[]]
        got = sorted(sorted(c.component) for c in v.children)
        if expect != got:
            raise StrategyError(f"children of ({_fmt(v.cops)}, {_fmt(v.component)}) are not the escape components",
                                "children", key)
        path = path | {key}
        for c in v.children:
            visit(c, path)

    visit(root, frozenset())


def verify_strategy(s, h1: Hypergraph, h2: Hypergraph) -> bool:
    try:
        check_strategy(s, h1, h2)
    except StrategyError:
        return False
    return True


def is_monotone(s, h1: Hypergraph, h2: Optional[Hypergraph] = None) -> bool:
    """Every tree edge has an empty escape door."""
    a = arena(h1)
    tree = _as_tree(s, h1, h2)
    for v, c in tree.edges():
        if v.component and escape_door(a, v.config, c.cops):
            return False
    return True


def strategy_size(s, h1: Optional[Hypergraph] = None, h2: Optional[Hypergraph] = None) -> int:
    tree = _as_tree(s, h1, h2)
    return sum(len(v.cops) for v in tree.root.walk())


# monotone solver -------------------------------------------------------------

def solve(h1: Hypergraph, h2: Hypergraph, moves: str = "maximal", first_move=None) -> Optional[GameTree]:
    """Monotone winning strategy, or ``None`` if the Robber escapes forever.

    ``win(C)`` holds when some squad covers ``border(C)`` and the move it
    induces sends the Robber only into strictly smaller winning components.
    With ``moves="maximal"`` the move is ``squad & Fr(C)``; ``"all"`` also
    tries every cop set between ``border(C)`` and that.  ``first_move`` forces
    the opening cop set.
    """
    if moves not in ("maximal", "all"):
        raise ValueError("moves must be 'maximal' or 'all'")
    a = arena(h1)
    if not a.nodes:
        raise ValueError("h1 has no node inside a hyperedge")
    if not leq(a, h2):
        warnings.warn("h1 is not covered by h2; no tree projection can exist", stacklevel=2)
    squads = [(e, a.mask_within(e)) for e in h2.edges]
    memo: dict = {}

    def candidates(c):
        fr = a._frontier(c)
        border = fr & ~c
        tried = set()
        for squad, sm in squads:
            if border & ~sm:
                continue
            top = sm & fr
            if moves == "maximal":
                opts = [top]
            else:
                free = top & ~border
                opts = []
                sub = free
                while True:
                    opts.append(border | sub)
                    if not sub:
                        break
                    sub = (sub - 1) & free
            for m in opts:
                if m and m not in tried:
                    tried.add(m)
                    yield squad, m

    def attempt(c, squad, m):
        comps = _escape_masks(a, c, m)
        if any(x == c for x in comps):
            return None
        if all(win(x) for x in comps):
            return (squad, m, comps)
        return None

    def win(c) -> bool:
        if c in memo:
            return memo[c] is not None
        memo[c] = None
        for squad, m in candidates(c):
            got = attempt(c, squad, m)
            if got:
                memo[c] = got
                return True
        return False

    full = a.full_mask
    if first_move is not None:
        fm = a.mask(first_move)
        squad = next((e for e, sm in squads if fm & ~sm == 0), None)
        if squad is None or not fm:
            return None
        got = attempt(full, squad, fm)
        if not got:
            return None
        memo[full] = got
    elif not win(full):
        return None

    def build(cops, squad, c):
        node = GameNode(a.members(cops), squad, a.members(c))
        if not c:
            return node
        sq, m, comps = memo[c]
        if comps:
            node.children = [build(m, sq, x) for x in comps]
        else:
            node.children = [GameNode(a.members(m), sq, ())]
        return node

    return GameTree(build(0, None, full))


# unrestricted solver -------------------------------------------------------

def brute_solve(h1: Hypergraph, h2: Hypergraph, bias: Optional[str] = None,
                seed: Optional[int] = None, limit: Optional[int] = None,
                excursions: int = 2) -> Optional[GameTree]:
    """Winning strategy over all legal moves, or ``None``.

    Legal moves and escape components depend only on the Robber's component,
    so the game graph has one state per reachable component.  Winning states
    form the Captain's attractor towards capture; any state outside it lets
    the Robber play forever.  Moves are chosen to decrease the attractor rank.
    ``bias="nonmonotone"`` draws moves with a seeded RNG, preferring ones
    with a non-empty escape door: up to ``excursions`` times per branch any
    such move into winning states is allowed, otherwise only rank-decreasing
    ones, which keeps the tree finite.
    """
    a = arena(h1)
    bound = max_nodes() if limit is None else limit
    if len(a.nodes) > bound:
        raise ValueError(f"brute_solve is limited to {bound} nodes, got {len(a.nodes)}")
    if not a.nodes:
        raise ValueError("h1 has no node inside a hyperedge")
    if bias not in (None, "nonmonotone"):
        raise ValueError("bias must be None or 'nonmonotone'")
    squads = [(e, a.mask_within(e)) for e in h2.edges]

    def moves_of(c):
        fr = a._frontier(c)
        border = fr & ~c
        out = {}
        for squad, sm in squads:
            base = sm & fr
            sub = base
            while sub:
                if sub not in out:
                    out[sub] = squad
                sub = (sub - 1) & base
        return [(m, sq, tuple(_escape_masks(a, c, m)), bool(border & ~m)) for m, sq in sorted(out.items())]

    full = a.full_mask
    graph = {}
    todo = [full]
    while todo:
        c = todo.pop()
        if c in graph:
            continue
        graph[c] = moves_of(c)
        for _, _, succ, _ in graph[c]:
            todo.extend(x for x in succ if x not in graph)

    rank: dict = {}
    r = 0
    while True:
        r += 1
        new = {}
        for c, mvs in graph.items():
            if c in rank:
                continue
            if any(all(x in rank for x in succ) for _, _, succ, _ in mvs):
                new[c] = r
        if not new:
            break
        rank.update(new)
    if full not in rank:
        return None

    rng = random.Random(seed)

    def pick(c, path, budget):
        k = rank[c]
        good = [mv for mv in graph[c] if all(rank.get(x, k) < k for x in mv[2])]
        if bias is None:
            return good[0], budget
        if budget > 0:
            # excursion: any leaking move into winning states that does not revisit the path
            odd = [mv for mv in graph[c] if mv[3] and all(x in rank and (mv[0], x) not in path for x in mv[2])]
            if odd:
                return rng.choice(odd), budget - 1
        fresh = [mv for mv in good if all((mv[0], x) not in path for x in mv[2])] or good
        odd = [mv for mv in fresh if mv[3]]
        return rng.choice(odd or fresh), budget

    def build(cops, squad, c, path, budget):
        node = GameNode(a.members(cops), squad, a.members(c))
        if not c:
            return node
        path = path | {(cops, c)}
        (m, sq, succ, _), budget = pick(c, path, budget)
        if succ:
            node.children = [build(m, sq, x, path, budget) for x in succ]
        else:
            node.children = [GameNode(a.members(m), sq, ())]
        return node

    root = build(0, None, full, frozenset(), excursions if bias else 0)
    # an excursion may come back to a component seen higher up; skip the loop
    _compress(root)
    return GameTree(root)


# monotonization ------------------------------------------------------------

def _first_nonmonotone(a: Hypergraph, tree: GameTree):
    """Shallowest leaking vertex ``r`` as ``(path root..r, ed)``."""
    level = [[tree.root]]
    while level:
        nxt = []
        for path in level:
            v = path[-1]
            if v.children and v.component:
                ed = escape_door(a, v.config, v.children[0].cops)
                if ed:
                    return path, ed
            nxt.extend(path + [c] for c in v.children)
        level = nxt
    return None


def monotonize(s, h1: Hypergraph, h2: Hypergraph, check: bool = True) -> GameTree:
    """Remove escape doors one at a time until the strategy is monotone.

    At the shallowest leaking vertex ``r`` (child of ``p``, reached by a
    monotone move) the move ``M_r`` played at ``p`` is shrunk to
    ``M_r - ED(r, M_s)``.  The component ``C_r'`` that absorbs ``C_r`` is
    attacked with ``M_s`` exactly as ``C_r`` was; every other escape
    component of ``p`` keeps its old subtree, and those swallowed by ``C_r'``
    are dropped.  Each step strictly lowers the strategy size.
    """
    a = arena(h1)
    tree = _as_tree(s, h1, h2)
    if check:
        check_strategy(tree, a, h2)
    tree = tree.copy()
    while True:
        hit = _first_nonmonotone(a, tree)
        if hit is None:
            return tree
        path, ed = hit
        before = strategy_size(tree)
        _rewrite(a, path, ed)
        _compress(tree.root)
        after = strategy_size(tree)
        assert after < before, (before, after)
        if check:
            check_strategy(tree, a, h2)


def _deepest_with(r: GameNode, comp: frozenset) -> Optional[GameNode]:
    """A proper descendant of ``r`` whose component is ``comp`` with no such descendant itself."""
    best = None
    stack = [(c, 1) for c in r.children]
    while stack:
        v, d = stack.pop()
        if v.component == comp and (best is None or d > best[1]):
            best = (v, d)
        stack.extend((c, d + 1) for c in v.children)
    return None if best is None else best[0]


def _compress(root: GameNode) -> None:
    """Skip ahead wherever a component reappears further down its own path."""
    stack = [root]
    while stack:
        v = stack.pop()
        if v.component:
            again = _deepest_with(v, v.component)
            if again is not None:
                v.children = again.children
        stack.extend(v.children)


def _rewrite(a: Hypergraph, path: list, ed: frozenset) -> None:
    p, r = path[-2], path[-1]
    m_r = r.cops
    squad = r.squad
    m_new = m_r - ed
    assert m_new < m_r
    old = {c.component: c for c in p.children}
    comps = [x.members for x in robber_components(a, p.config, m_new)]
    c_new = next(x for x in comps if r.component | ed <= x)
    # if C_r' already occurs below r, play on as the old strategy did there
    again = _deepest_with(r, c_new)
    follow = again.children if again is not None else r.children
    for anc in path[:-1]:
        if anc.component == c_new:
            # r' would repeat an earlier component; play depends only on the
            # component, so that vertex continues directly as r' would
            anc.children = follow
            return
    children = []
    for comp in comps:
        if comp == c_new:
            node = GameNode(m_new, squad, comp, follow)
        else:
            # P1/P2: untouched components keep their subtree
            keep = old.get(comp)
            assert keep is not None, "escape component appeared from nowhere"
            node = GameNode(m_new, squad, comp, keep.children)
        children.append(node)
    for comp in old:
        assert comp in set(comps) or comp <= c_new
    exp = sorted(sorted(x.members) for x in robber_components(a, Configuration(m_new, c_new), r.children[0].cops))
    got = sorted(sorted(c.component) for c in r.children if c.component)
    assert exp == got, "the shrunk position must open the same escape components"
    p.children = children
