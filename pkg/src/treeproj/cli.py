"""Command-line interface.

Exit codes: 0 yes/success, 1 no/none, 2 usage or parse error, 3 verification
failure (the witness goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus, formats, game, jointrees, treeprojection as tp
from .errors import Violation
from .formats import ParseError, dumps
from .hypergraph import Hypergraph, border, frontier, v_components

OK, NO, USAGE, FAILED = 0, 1, 2, 3


class _Failure(Exception):
    """Verification failure with a witness message."""


def _set(text) -> frozenset:
    if text is None:
        return None
    return frozenset(t for t in text.replace(",", " ").split() if t)


def _fmt(nodes) -> str:
    return "{" + ",".join(sorted(nodes)) + "}"


def _load(path) -> Hypergraph:
    try:
        return formats.load_hypergraph(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, str(path)) from None


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_json(rep: tp.TPReport, h: Hypergraph) -> dict:
    wit = {}
    for e, w in sorted(rep.normal_form_witnesses.items(), key=lambda kv: sorted(kv[0])):
        wit[h.name_of(e) if e in h else _fmt(e)] = (
            formats.jointree_to_json(w, h) if isinstance(w, jointrees.JoinTree) else w)
    return {
        "valid": rep.valid,
        "reduced": rep.reduced,
        "nodes_preserved": rep.nodes_preserved,
        "components_preserved": rep.components_preserved,
        "h1_connected_all_roots": rep.h1_connected_all_roots,
        "normal_form_witnesses": wit,
        "certified_minimal": rep.certified_minimal,
        "all_flags": rep.all_flags,
        "notes": list(rep.notes),
    }


def _report_text(rep: tp.TPReport) -> str:
    lines = [f"valid: {rep.valid}", f"reduced: {rep.reduced}", f"nodes preserved: {rep.nodes_preserved}",
             f"components preserved: {rep.components_preserved}",
             f"h1-connected from every root: {rep.h1_connected_all_roots}"]
    for e, w in sorted(rep.normal_form_witnesses.items(), key=lambda kv: sorted(kv[0])):
        ok = isinstance(w, jointrees.JoinTree)
        lines.append(f"normal form at {_fmt(e)}: {'yes' if ok else w}")
    lines.append(f"certified minimal: {rep.certified_minimal}")
    lines += [f"note: {n}" for n in rep.notes]
    return "\n".join(lines) + "\n"


def _decomposition(args, h, d) -> str:
    if args.format == "json":
        return dumps(formats.decomposition_to_json(d, h))
    if args.format == "dot":
        return formats.decomposition_to_dot(d)
    lines = [f"width {d.width}"]
    for i, bag in enumerate(d.bags):
        p = d.parent[i]
        line = f"v{i} parent={'-' if p is None else f'v{p}'} chi={_fmt(bag)}"
        if isinstance(d, jointrees.HypertreeDecomposition):
            line += " lambda=" + " ".join(h.name_of(e) for e in sorted(d.covers[i], key=sorted))
        lines.append(line)
    return "\n".join(lines) + "\n"


def _jointree(args, h, jt) -> str:
    if args.format == "json":
        return dumps(formats.jointree_to_json(jt, h))
    if args.format == "dot":
        return formats.jointree_to_dot(jt)
    lines = []
    for i, v in enumerate(jt.vertices):
        p = jt.parent[i]
        lines.append(f"{h.name_of(v)} {_fmt(v)} parent={'-' if p is None else h.name_of(jt.vertices[p])}")
    return "\n".join(lines) + "\n"


def _gametree(args, t, h1, h2) -> str:
    if args.format == "json":
        return dumps(formats.gametree_to_json(t, h2))
    if args.format == "dot":
        return formats.gametree_to_dot(t)
    lines = []

    def rec(v, depth):
        lines.append("  " * depth + f"({_fmt(v.cops)}, {_fmt(v.component)})")
        for c in sorted(v.children, key=lambda c: sorted(c.component)):
            rec(c, depth + 1)

    rec(t.root, 0)
    lines.append(f"monotone: {game.is_monotone(t, h1)}  size: {game.strategy_size(t)}")
    return "\n".join(lines) + "\n"



# verbs ---------------------------------------------------------------------

def cmd_acyclic(args):
    h = _load(args.h)
    jt = jointrees.build_join_tree(h)
    if args.format == "json":
        _emit(args, dumps({"acyclic": jt is not None,
                           "jointree": formats.jointree_to_json(jt, h) if jt is not None else None}))
    else:
        _emit(args, "acyclic\n" if jt is not None else "cyclic\n")
    return OK if jt is not None else NO


def cmd_components(args):
    h = _load(args.h)
    sep = _set(args.sep) or frozenset()
    unknown = sep - h.nodes
    if unknown:
        raise ParseError(f"--sep names unknown nodes {_fmt(unknown)}")
    comps = v_components(h, sep)
    rows = [{"component": sorted(c.members), "frontier": sorted(frontier(h, c.members)),
             "border": sorted(border(h, c.members))} for c in comps]
    if args.format == "json":
        _emit(args, dumps({"separator": sorted(sep), "components": rows}))
    else:
        _emit(args, "".join(f"{_fmt(r['component'])} frontier={_fmt(r['frontier'])} border={_fmt(r['border'])}\n"
                            for r in rows))
    return OK


def cmd_jointree(args):
    h = _load(args.h)
    root = h.edge_by_name(args.root) if args.root else None
    jt = jointrees.build_join_tree(h, root)
    if jt is None:
        sys.stderr.write("hypergraph is cyclic\n")
        return NO
    _emit(args, _jointree(args, h, jt))
    return OK


def _instance(args):
    h1, h2 = _load(args.h1), _load(args.h2)
    return h1, h2, tp.TPInstance(h1, h2)


def _tp_output(args, ha, inst, extra=None) -> str:
    if args.format == "json":
        data = {"tp": formats.hypergraph_to_json(ha)}
        if extra is not None:
            data["report"] = _report_json(extra, ha)
        return dumps(data)
    if args.format == "dot":
        return formats.jointree_to_dot(jointrees.build_join_tree(ha))
    return formats.format_hypergraph(ha)


def cmd_tp_find(args):
    _, _, inst = _instance(args)
    ha = tp.find_tp(inst)
    if ha is None:
        sys.stderr.write("no tree projection\n")
        return NO
    if args.minimize:
        ha = tp.minimize(ha, inst)
    rep = tp.check_minimality_conditions(ha, inst, certify=False) if args.format == "json" else None
    _emit(args, _tp_output(args, ha, inst, rep))
    return OK


def _given_tp(args, inst):
    ha = _load(args.ha)
    try:
        tp.check_tree_projection(ha, inst)
    except Violation as exc:
        raise _Failure(str(exc)) from None
    return ha


def cmd_tp_check(args):
    _, _, inst = _instance(args)
    _given_tp(args, inst)
    _emit(args, dumps({"tree_projection": True}) if args.format == "json" else "tree projection\n")
    return OK


def cmd_tp_minimize(args):
    _, _, inst = _instance(args)
    ha = tp.minimize(_given_tp(args, inst), inst)
    _emit(args, _tp_output(args, ha, inst))
    return OK


def cmd_tp_report(args):
    _, _, inst = _instance(args)
    ha = _given_tp(args, inst)
    rep = tp.check_minimality_conditions(ha, inst, certify=not args.no_certify)
    _emit(args, dumps(_report_json(rep, ha)) if args.format == "json" else _report_text(rep))
    return OK if rep.all_flags else NO


def cmd_game_solve(args):
    h1, h2, _ = _instance(args)
    first = _set(args.first_move)
    if args.brute:
        t = game.brute_solve(h1, h2, bias="nonmonotone" if args.nonmonotone else None, seed=args.seed)
    else:
        t = game.solve(h1, h2, first_move=first)
    if t is None:
        sys.stderr.write("the Robber wins\n")
        return NO
    if args.tree:
        with open(args.tree, "w", encoding="utf-8") as fh:
            fh.write(dumps(formats.gametree_to_json(t, h2)))
    _emit(args, _gametree(args, t, h1, h2))
    return OK


def _given_tree(args, h1, h2):
    t = formats.gametree_from_json(_load_json(args.tree_in), h2)
    try:
        game.check_strategy(t, h1, h2)
    except Violation as exc:
        raise _Failure(str(exc)) from None
    return t


def cmd_game_monotonize(args):
    h1, h2, _ = _instance(args)
    t = game.monotonize(_given_tree(args, h1, h2), h1, h2)
    if args.tree:
        with open(args.tree, "w", encoding="utf-8") as fh:
            fh.write(dumps(formats.gametree_to_json(t, h2)))
    _emit(args, _gametree(args, t, h1, h2))
    return OK


def cmd_game_verify(args):
    h1, h2, _ = _instance(args)
    t = _given_tree(args, h1, h2)
    mono = game.is_monotone(t, h1)
    if args.format == "json":
        _emit(args, dumps({"winning": True, "monotone": mono, "size": game.strategy_size(t)}))
    else:
        _emit(args, f"winning strategy, monotone: {mono}, size: {game.strategy_size(t)}\n")
    return OK


def _need_k(args):
    if args.k is None:
        raise ParseError("--k is required")
    return args.k


def cmd_ghw(args):
    h = _load(args.h)
    d = tp.ghw_decide(h, _need_k(args))
    if d is None:
        sys.stderr.write(f"ghw > {args.k}\n")
        return NO
    _emit(args, _decomposition(args, h, d))
    return OK


def cmd_tw(args):
    h = _load(args.h)
    d = tp.tw_decide(h, _need_k(args))
    if d is None:
        sys.stderr.write(f"tw > {args.k}\n")
        return NO
    _emit(args, _decomposition(args, h, d))
    return OK


def _verify_decomposition(args, want_hd: bool):
    h = _load(args.h)
    d = formats.decomposition_from_json(_load_json(args.decomposition), h)
    try:
        if want_hd:
            if not isinstance(d, jointrees.HypertreeDecomposition):
                raise _Failure("decomposition has no lambda labels")
            w = jointrees.verify_hypertree_decomposition(h, d, generalized=args.generalized)
            if args.sh07 and not jointrees.is_sh07_connected(d):
                try:
                    jointrees.check_sh07_connected(d)
                except Violation as exc:
                    raise _Failure(str(exc)) from None
        else:
            w = jointrees.verify_tree_decomposition(h, jointrees.TreeDecomposition(d.bags, d.parent))
    except (Violation, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise _Failure(str(exc)) from None
    _emit(args, dumps({"valid": True, "width": w}) if args.format == "json" else f"valid, width {w}\n")
    return OK


def cmd_verify_td(args):
    return _verify_decomposition(args, False)


def cmd_verify_hd(args):
    return _verify_decomposition(args, True)


def cmd_gen_corpus(args):
    if not args.out:
        raise ParseError("--out DIR is required")
    paths = corpus.gen_corpus(args.seed, args.out, count=args.count, exhaustive=args.exhaustive,
                              max_nodes=args.max_nodes, max_edges=args.max_edges, max_edge=args.max_edge)
    sys.stdout.write(f"wrote {len(paths) // 2} pairs to {args.out}\n")
    return OK


# parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--json", dest="format", action="store_const", const="json", help="same as --format json")
    common.add_argument("--out", help="write the main output here instead of stdout")

    p = argparse.ArgumentParser(prog="treeproj", description="Tree projections, the Robber and Captain game, "
                                "and width deciders.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_, *files):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for f in files:
            sp.add_argument(f)
        sp.set_defaults(fn=fn)
        return sp

    verb("acyclic", cmd_acyclic, "exit 0 iff the hypergraph is acyclic", "h")
    sp = verb("components", cmd_components, "[V]-components with frontier and border", "h")
    sp.add_argument("--sep", help="separator nodes, e.g. E,F,G")
    sp = verb("jointree", cmd_jointree, "join tree of an acyclic hypergraph", "h")
    sp.add_argument("--root", help="name of the root hyperedge")
    sp = verb("tp-find", cmd_tp_find, "find a tree projection of (H1, H2)", "h1", "h2")
    sp.add_argument("--minimize", action="store_true")
    verb("tp-check", cmd_tp_check, "check that HA is a tree projection of (H1, H2)", "h1", "h2", "ha")
    verb("tp-minimize", cmd_tp_minimize, "minimize a tree projection", "h1", "h2", "ha")
    sp = verb("tp-report", cmd_tp_report, "necessary conditions for minimality", "h1", "h2", "ha")
    sp.add_argument("--no-certify", action="store_true", help="skip the brute-force minimality check")
    sp = verb("game-solve", cmd_game_solve, "winning Captain strategy, if any", "h1", "h2")
    sp.add_argument("--tree", help="write the game tree as JSON")
    sp.add_argument("--first-move", help="force the opening cop set, e.g. E,F,G")
    sp.add_argument("--brute", action="store_true", help="use the exhaustive solver")
    sp.add_argument("--nonmonotone", action="store_true", help="with --brute, prefer leaking moves")
    sp.add_argument("--seed", type=int, default=0)
    sp = verb("game-monotonize", cmd_game_monotonize, "make a winning strategy monotone", "h1", "h2", "tree_in")
    sp.add_argument("--tree", help="write the result as JSON")
    verb("game-verify", cmd_game_verify, "check a game tree is a winning strategy", "h1", "h2", "tree_in")
    sp = verb("ghw", cmd_ghw, "generalized hypertree decomposition of width <= k", "h")
    sp.add_argument("--k", type=int)
    sp = verb("tw", cmd_tw, "tree decomposition of width <= k", "h")
    sp.add_argument("--k", type=int)
    verb("verify-td", cmd_verify_td, "check a tree decomposition (JSON)", "h", "decomposition")
    sp = verb("verify-hd", cmd_verify_hd, "check a hypertree decomposition (JSON)", "h", "decomposition")
    sp.add_argument("--generalized", action="store_true", help="skip the descendant condition")
    sp.add_argument("--sh07", action="store_true", help="also require the SH07 connectedness condition")
    sp = verb("gen-corpus", cmd_gen_corpus, "write seeded instance pairs")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--exhaustive", action="store_true", help="add every pair on 4 nodes")
    sp.add_argument("--max-nodes", type=int, default=8)
    sp.add_argument("--max-edges", type=int, default=6)
    sp.add_argument("--max-edge", type=int, default=4)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.fn(args)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE
    except _Failure as exc:
        sys.stderr.write(f"{exc}\n")
        return FAILED
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
