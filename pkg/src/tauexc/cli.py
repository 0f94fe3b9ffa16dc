"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 the answer is
unknown inside the inventory bound.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import modules as mr
from .algebra import AlgebraError
from .builtins import load_algebra
from .inventory import InventoryError, InventoryTooSmall, build_inventory
from .reports import CHECKS, EXAMPLES, RunReport, reproduce_example, run_checks, seq_label
from .tauseq import (MutationError, Mutability, UnknownAtBound, classify, enumerate_complete,
                     hasse_tex, mutate, orbit)
from .torsion import ContextError, is_tau_rigid, obj_label, sttilt_hasse, whole_context

DEFAULT_MAX_DIM = 12
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, algebra: bool = True) -> None:
    if algebra:
        p.add_argument("--algebra", required=True, help="built-in name or path to an algebra file")
    p.add_argument("--max-dim", type=int, default=None,
                   help=f"inventory bound on total dimension (default {DEFAULT_MAX_DIM})")
    p.add_argument("--field-char", type=int, default=None, help="prime characteristic of the ground field")
    p.add_argument("--seed", type=int, default=0, help="seed mixed into randomized splitting")
    p.add_argument("--format", choices=("table", "json", "dot"), default="table")


def _seq_args(p: argparse.ArgumentParser, index: bool, direction: bool) -> None:
    p.add_argument("--seq", required=True, help='comma-separated member names, e.g. "S1,S2,P3"')
    if index:
        p.add_argument("--index", type=int, required=direction, help="1-based mutation index")
    if direction:
        p.add_argument("--dir", choices=("left", "right"), required=True)


def _add_seq_commands(sub) -> None:
    p = sub.add_parser("list", help="all complete τ-exceptional sequences")
    _common(p)
    p.set_defaults(func=cmd_list)
    p = sub.add_parser("mutate", help="apply φ_i (left) or ψ_i (right)")
    _common(p)
    _seq_args(p, True, True)
    p.set_defaults(func=cmd_mutate)
    p = sub.add_parser("orbit", help="sequences reachable by mutation")
    _common(p)
    _seq_args(p, True, False)
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=cmd_orbit)
    p = sub.add_parser("graph", help="mutation graph of complete sequences")
    _common(p)
    p.set_defaults(func=cmd_graph)
    p = sub.add_parser("classify", help="regularity and mutability of adjacent pairs")
    _common(p)
    _seq_args(p, True, False)
    p.set_defaults(func=cmd_classify)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tauexc",
                                     description="τ-exceptional sequences over monomial quiver algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inventory", help="indecomposables with τ, rigidity and brick flags")
    _common(p)
    p.set_defaults(func=cmd_inventory)

    p = sub.add_parser("sttilt-graph", help="oriented exchange graph of support τ-tilting objects")
    _common(p)
    p.set_defaults(func=cmd_sttilt)

    grp = sub.add_parser("tauexc", help="τ-exceptional sequence commands")
    _add_seq_commands(grp.add_subparsers(dest="action", required=True))
    _add_seq_commands(sub)

    p = sub.add_parser("check", help="structural checks over all complete sequences")
    p.add_argument("which", choices=sorted(CHECKS))
    _common(p)
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("example", help="reproduce a built-in worked example")
    p.add_argument("name", choices=list(EXAMPLES))
    _common(p, algebra=False)
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_example)
    return parser


# -- helpers ------------------------------------------------------------------------------

def _context(args):
    alg = load_algebra(args.algebra, args.field_char)
    inv = build_inventory(alg, max_dim=args.max_dim or DEFAULT_MAX_DIM)
    return whole_context(inv)


def _parse_seq(W, text: str) -> tuple[str, ...]:
    seq = tuple(x.strip() for x in text.split(",") if x.strip())
    if not seq:
        raise UsageError("--seq is empty")
    missing = [x for x in seq if x not in W.member_set]
    if missing:
        raise UsageError(f"unknown member names {missing}; see the inventory subcommand")
    return seq


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _dot_id(k: int) -> str:
    return f"n{k}"


def _marker_line(W) -> str:
    return f"# {W.engine.alg.name}: {W.engine.inv.bound_marker()}"


# -- commands -------------------------------------------------------------------------------

def cmd_inventory(args, out) -> int:
    W = _context(args)
    inv = W.engine.inv
    rows = []
    for name in inv.names:
        try:
            t = inv.tau(name)
            tau_name = "+".join(t) if t else "0"
        except InventoryTooSmall:
            tau_name = "?"
        rows.append({"name": name, "dims": list(inv[name].dims), "tau": tau_name,
                     "tau_rigid": is_tau_rigid(W, [name]), "brick": mr.is_brick(inv[name])})
    if args.format == "json":
        out.write(_dump({"algebra": inv.alg.name, "bound": inv.bound_marker(),
                         "bands_present": inv.bands_present, "members": rows}) + "\n")
        return EXIT_OK
    if args.format == "dot":
        raise UsageError("inventory has no DOT form; use table or json")
    out.write(_marker_line(W) + "\n")
    out.write(f"{'name':14} {'dims':14} {'tau':14} {'rigid':6} brick\n")
    for r in rows:
        dims = "(" + ",".join(map(str, r["dims"])) + ")"
        out.write(f"{r['name']:14} {dims:14} {r['tau']:14} {_yn(r['tau_rigid']):6} {_yn(r['brick'])}\n")
    return EXIT_OK


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def cmd_sttilt(args, out) -> int:
    W = _context(args)
    H = sttilt_hasse(W)
    verts = sorted(H.nodes, key=obj_label)
    ids = {v: k for k, v in enumerate(verts)}
    edges = sorted((ids[u], ids[v], H.edges[u, v]["brick"]) for u, v in H.edges)
    if args.format == "json":
        out.write(_dump({"algebra": W.engine.alg.name, "bound": W.engine.inv.bound_marker(),
                         "vertices": [obj_label(v) for v in verts],
                         "edges": [{"src": a, "tgt": b, "brick": lab} for a, b, lab in edges]}) + "\n")
    elif args.format == "dot":
        out.write("digraph sttilt {\n")
        out.write(f'  label="{W.engine.alg.name} ({W.engine.inv.bound_marker()})";\n')
        for v in verts:
            out.write(f'  {_dot_id(ids[v])} [label="{obj_label(v)}"];\n')
        for a, b, lab in edges:
            out.write(f'  {_dot_id(a)} -> {_dot_id(b)} [label="{lab}"];\n')
        out.write("}\n")
    else:
        out.write(_marker_line(W) + "\n")
        out.write(f"# {len(verts)} vertices, {len(edges)} edges\n")
        for a, b, lab in edges:
            out.write(f"{obj_label(verts[a])} -> {obj_label(verts[b])}  [{lab}]\n")
    return EXIT_OK


def cmd_list(args, out) -> int:
    W = _context(args)
    seqs = enumerate_complete(W)
    if args.format == "json":
        out.write(_dump({"algebra": W.engine.alg.name, "bound": W.engine.inv.bound_marker(),
                         "complete_sequences": [list(s) for s in seqs]}) + "\n")
        return EXIT_OK
    if args.format == "dot":
        raise UsageError("list has no DOT form; use graph")
    out.write(_marker_line(W) + "\n")
    out.write(f"# {len(seqs)} complete sequences\n")
    for s in seqs:
        out.write(",".join(s) + "\n")
    return EXIT_OK


def cmd_mutate(args, out) -> int:
    W = _context(args)
    seq = _parse_seq(W, args.seq)
    res = mutate(W, seq, args.index, args.dir)
    if args.format == "json":
        out.write(_dump({"algebra": W.engine.alg.name, "bound": W.engine.inv.bound_marker(),
                         "input": list(seq), "index": args.index, "dir": args.dir,
                         "result": list(res)}) + "\n")
    else:
        out.write(",".join(res) + "\n")
        if not W.engine.inv.complete:
            sys.stderr.write(f"note: {W.engine.inv.bound_marker()}\n")
    return EXIT_OK


def _classification_rows(W, seq, indices):
    rows = {}
    for i in indices:
        try:
            c = classify(W, seq, i)
            rows[str(i)] = dict(c.as_dict(), note=c.note)
        except (MutationError, ContextError, InventoryError) as err:
            rows[str(i)] = {"error": str(err)}
    return rows


def cmd_graph(args, out) -> int:
    W = _context(args)
    G = hasse_tex(W)
    seqs = enumerate_complete(W)
    ids = {s: k for k, s in enumerate(seqs)}
    edges = sorted((ids[u], ids[v], d["index"]) for u, v, d in G.edges(data=True))
    n = W.rank
    if args.format == "json":
        out.write(_dump({
            "algebra": W.engine.alg.name,
            "bound": W.engine.inv.bound_marker(),
            "complete_sequences": [list(s) for s in seqs],
            "edges": [{"src": a, "tgt": b, "index": i, "dir": "left"} for a, b, i in edges],
            "classification": [_classification_rows(W, s, range(1, n)) for s in seqs],
        }) + "\n")
    elif args.format == "dot":
        out.write("digraph tauexc {\n")
        out.write(f'  label="{W.engine.alg.name} ({W.engine.inv.bound_marker()})";\n')
        for s in seqs:
            out.write(f'  {_dot_id(ids[s])} [label="{",".join(s)}"];\n')
        for a, b, i in edges:
            style = "solid" if i == n - 1 else "dashed" if i == n - 2 else "dotted"
            out.write(f'  {_dot_id(a)} -> {_dot_id(b)} [style={style}, label="{i}"];\n')
        out.write("}\n")
    else:
        out.write(_marker_line(W) + "\n")
        out.write(f"# {len(seqs)} sequences, {len(edges)} edges; X -> Y means X = φ_i(Y)\n")
        for a, b, i in edges:
            out.write(f"{seq_label(seqs[a])} -> {seq_label(seqs[b])}  [{i}]\n")
    return EXIT_OK


def cmd_orbit(args, out) -> int:
    W = _context(args)
    seq = _parse_seq(W, args.seq)
    res = orbit(W, seq, args.depth, [args.index] if args.index else None)
    nodes = sorted(res.graph.nodes)
    ids = {s: k for k, s in enumerate(nodes)}
    edges = sorted((ids[u], ids[v], d["index"]) for u, v, d in res.graph.edges(data=True))
    frontier = {seq_label(s): why for s, why in sorted(res.frontier.items())}
    if args.format == "json":
        out.write(_dump({"algebra": W.engine.alg.name, "bound": W.engine.inv.bound_marker(),
                         "start": list(seq), "sequences": [list(s) for s in nodes],
                         "edges": [{"src": a, "tgt": b, "index": i, "dir": "left"} for a, b, i in edges],
                         "frontier": frontier}) + "\n")
    elif args.format == "dot":
        n = len(seq)
        out.write("digraph orbit {\n")
        for s in nodes:
            out.write(f'  {_dot_id(ids[s])} [label="{",".join(s)}"];\n')
        for a, b, i in edges:
            style = "solid" if i == n - 1 else "dashed" if i == n - 2 else "dotted"
            out.write(f'  {_dot_id(a)} -> {_dot_id(b)} [style={style}, label="{i}"];\n')
        out.write("}\n")
    else:
        out.write(_marker_line(W) + "\n")
        out.write(f"# {len(nodes)} sequences within {args.depth} steps; X -> Y means X = φ_i(Y)\n")
        for a, b, i in edges:
            out.write(f"{seq_label(nodes[a])} -> {seq_label(nodes[b])}  [{i}]\n")
        for s, why in frontier.items():
            if why != "depth":
                out.write(f"# stopped at {s}: {why}\n")
    return EXIT_OK


def cmd_classify(args, out) -> int:
    W = _context(args)
    seq = _parse_seq(W, args.seq)
    indices = [args.index] if args.index else list(range(1, len(seq)))
    found = {}
    for i in indices:
        found[i] = classify(W, seq, i)
    unknown = any(Mutability.UNKNOWN in (c.left_mutable, c.right_mutable) for c in found.values())
    if args.format == "json":
        out.write(_dump({"algebra": W.engine.alg.name, "bound": W.engine.inv.bound_marker(),
                         "sequence": list(seq),
                         "classification": {str(i): dict(c.as_dict(), note=c.note) for i, c in found.items()}})
                  + "\n")
    else:
        out.write(_marker_line(W) + "\n")
        for i, c in found.items():
            line = (f"{i}: left {c.left.value} (mutable {c.left_mutable.value}), "
                    f"right {c.right.value} (mutable {c.right_mutable.value})")
            out.write(line + (f"  [{c.note}]" if c.note else "") + "\n")
    return EXIT_UNKNOWN if unknown else EXIT_OK


def _emit_report(report: RunReport, args, out) -> int:
    if args.format == "json":
        out.write(_dump(report.as_dict(args.timings)) + "\n")
    elif args.format == "dot":
        raise UsageError("reports have no DOT form; use table or json")
    else:
        out.write(report.as_table(args.timings) + "\n")
    return report.exit_code


def cmd_check(args, out) -> int:
    W = _context(args)
    report = RunReport(f"check {args.which}", W.engine.alg.name, W.engine.inv.bound_marker())
    run_checks(report, CHECKS[args.which](W))
    return _emit_report(report, args, out)


def cmd_example(args, out) -> int:
    report = reproduce_example(args.name, args.max_dim, args.field_char)
    return _emit_report(report, args, out)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed < 0:
        sys.stderr.write("error: --seed must be non-negative\n")
        return EXIT_USAGE
    mr.set_seed(args.seed)
    try:
        return args.func(args, out)
    except (InventoryTooSmall, UnknownAtBound) as err:
        sys.stderr.write(f"unknown at the bound: {err}\n")
        return EXIT_UNKNOWN
    except (UsageError, MutationError, ContextError, InventoryError, AlgebraError,
            KeyError, FileNotFoundError) as err:
        msg = err.args[0] if isinstance(err, KeyError) and err.args else err
        sys.stderr.write(f"error: {msg}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
