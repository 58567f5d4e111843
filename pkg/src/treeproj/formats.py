"""Text, JSON and DOT formats.

Hypergraph text: one hyperedge per line, either ``name(A,B,C)`` or bare
``A B C``; ``#`` starts a comment.  Nodes and names match ``[A-Za-z0-9_]+``.
"""

from __future__ import annotations

import json
import re
import warnings

from .game import GameNode, GameTree
from .hypergraph import Hypergraph
from .jointrees import HypertreeDecomposition, JoinTree, TreeDecomposition

_TOKEN = r"[A-Za-z0-9_]+"
_NAMED = re.compile(rf"^({_TOKEN})\s*\((.*)\)$")
_TOKEN_RE = re.compile(rf"^{_TOKEN}$")


class ParseError(ValueError):
    def __init__(self, message, line=None, source=None):
        where = f"{source or '<input>'}:{line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.source = source


def parse_hypergraph(text: str, source: str = None) -> Hypergraph:
    edges, names = [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _NAMED.match(line)
        if m:
            name, body = m.group(1), m.group(2)
            members = [t.strip() for t in body.split(",")] if body.strip() else []
        elif "(" in line or ")" in line:
            raise ParseError(f"malformed hyperedge {line!r}", lineno, source)
        else:
            name, members = None, line.split()
        if not members:
            raise ParseError("empty hyperedge", lineno, source)
        for t in members:
            if not _TOKEN_RE.match(t):
                raise ParseError(f"bad node name {t!r}", lineno, source)
        e = frozenset(members)
        if e in names or e in edges:
            warnings.warn(f"{source or '<input>'}:{lineno}: duplicate hyperedge kept once")
            continue
        edges.append(e)
        if name is not None:
            names[e] = name
    return Hypergraph(edges, names=names)


def load_hypergraph(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hypergraph(fh.read(), str(path))


def format_hypergraph(h: Hypergraph) -> str:
    return "".join(f"{h.name_of(e)}({','.join(sorted(e))})\n" for e in h.edges)


def hypergraph_to_json(h: Hypergraph) -> dict:
    return {
        "nodes": list(h.order),
        "node_index": {x: i for i, x in enumerate(h.order)},
        "edges": [{"name": h.name_of(e), "members": sorted(e)} for e in h.edges],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# decompositions ------------------------------------------------------------

def decomposition_to_json(d, h: Hypergraph = None) -> dict:
    verts = []
    for i, bag in enumerate(d.bags):
        v = {"chi": sorted(bag), "parent": d.parent[i]}
        if isinstance(d, HypertreeDecomposition):
            lam = sorted(d.covers[i], key=lambda e: sorted(e))
            v["lambda"] = [h.name_of(e) if h is not None else sorted(e) for e in lam]
        verts.append(v)
    return {"vertices": verts, "width": d.width}


def decomposition_from_json(data: dict, h: Hypergraph):
    """``TreeDecomposition`` unless some vertex carries ``lambda``."""
    try:
        verts = data["vertices"]
        bags = [frozenset(v["chi"]) for v in verts]
        parent = [v.get("parent") for v in verts]
        if any("lambda" in v for v in verts):
            covers = []
            for v in verts:
                lam = []
                for ref in v.get("lambda", []):
                    lam.append(h.edge_by_name(ref) if isinstance(ref, str) else frozenset(ref))
                covers.append(lam)
            return HypertreeDecomposition(bags, covers, parent)
        return TreeDecomposition(bags, parent)
    except KeyError as exc:
        raise ParseError(f"decomposition JSON: unknown or missing key {exc}") from None
    except (TypeError, AttributeError):
        raise ParseError("decomposition JSON: malformed vertex") from None


def jointree_to_json(jt: JoinTree, h: Hypergraph = None) -> dict:
    return {"vertices": [{"edge": h.name_of(v) if h is not None and v in h else None,
                          "chi": sorted(v), "parent": jt.parent[i]}
                         for i, v in enumerate(jt.vertices)]}


# game trees ----------------------------------------------------------------

def gametree_to_json(t: GameTree, h2: Hypergraph = None) -> dict:
    verts, edges = [], []
    ids = {}
    for v in t.root.walk():
        ids[id(v)] = len(verts)
        squad = None
        if v.squad is not None:
            squad = h2.name_of(v.squad) if h2 is not None and v.squad in h2 else sorted(v.squad)
        verts.append({"id": ids[id(v)], "cops": sorted(v.cops), "squad": squad,
                      "component": sorted(v.component)})
    for v in t.root.walk():
        for c in v.children:
            edges.append([ids[id(v)], ids[id(c)]])
    return {"vertices": verts, "edges": edges}


def gametree_from_json(data: dict, h2: Hypergraph = None) -> GameTree:
    try:
        nodes = {}
        for v in data["vertices"]:
            sq = v.get("squad")
            if isinstance(sq, str):
                sq = h2.edge_by_name(sq) if h2 is not None else None
            nodes[v["id"]] = GameNode(v["cops"], sq, v["component"])
        has_parent = set()
        for p, c in data["edges"]:
            nodes[p].children.append(nodes[c])
            has_parent.add(c)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"game tree JSON: {exc}") from None
    roots = [i for i in nodes if i not in has_parent]
    if len(roots) != 1:
        raise ParseError("game tree JSON needs exactly one root")
    return GameTree(nodes[roots[0]])


# DOT ----------------------------------------------------------------------

def _label(nodes) -> str:
    return "{" + ",".join(sorted(nodes)) + "}"


def jointree_to_dot(jt: JoinTree) -> str:
    lines = ["graph jointree {"]
    for i, v in enumerate(jt.vertices):
        lines.append(f'  v{i} [label="{_label(v)}"];')
    for p, c in jt.tree_edges():
        lines.append(f"  v{p} -- v{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def decomposition_to_dot(d) -> str:
    lines = ["graph decomposition {"]
    for i, b in enumerate(d.bags):
        lab = _label(b)
        if isinstance(d, HypertreeDecomposition):
            lab += "\\n" + " ".join(_label(e) for e in sorted(d.covers[i], key=sorted))
        lines.append(f'  v{i} [label="{lab}"];')
    for i, p in enumerate(d.parent):
        if p is not None:
            lines.append(f"  v{p} -- v{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def gametree_to_dot(t: GameTree) -> str:
    lines = ["digraph gametree {"]
    ids = {}
    for v in t.root.walk():
        ids[id(v)] = len(ids)
        lines.append(f'  v{ids[id(v)]} [label="({_label(v.cops)}, {_label(v.component)})"];')
    for v in t.root.walk():
        for c in v.children:
            lines.append(f"  v{ids[id(v)]} -> v{ids[id(c)]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
