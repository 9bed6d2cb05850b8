"""Command-line front end.

Subcommands mirror the library pipelines: ``invariants``, ``iso``,
``charpoly``, ``deleted``, ``reconstruct``, ``gen``.  Graph inputs are files
(or ``-`` for stdin) auto-detected as graph6 or edge-list.  Output is JSON by
default (big integers as decimal strings), ``--format text`` for humans;
identical inputs and flags produce byte-identical output.

Exit codes: ``iso`` maps its verdict to 0 (isomorphic), 1 (not isomorphic)
or 2 (inconclusive); every command uses 3 for IO, parse and usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .charpoly import (
    charpoly_from_traces,
    check_derivative_identity,
    power_traces,
    vertex_deleted_charpolys,
)
from .graphs import (
    Graph,
    GraphParseError,
    fixture_graph,
    parse_graph_auto,
    random_graph,
    write_graph6,
)
from .invariants import (
    DEFAULT_MODULUS,
    InvariantTable,
    certificate,
    walk_diagonal_table,
    walk_diagonal_table_mod,
)
from .isomatch import DEFAULT_BUDGET, IsoConfig, IsoVerdict, find_isomorphism
from .reconstruct import reconstruct_adjacency

_ISO_EXIT = {IsoVerdict.ISOMORPHIC: 0, IsoVerdict.NOT_ISOMORPHIC: 1,
             IsoVerdict.INCONCLUSIVE: 2}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors, which would collide with the
    # "inconclusive" verdict code; remap usage errors to 3
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _load_graph(path: str) -> Graph:
    if path == "-":
        text = sys.stdin.read()
    else:
        text = Path(path).read_text()
    return parse_graph_auto(text)


def _print_json(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _render_table(obj: dict) -> str:
    rows = obj["d"]
    width = max((len(x) for row in rows for x in row), default=1)
    lines = [f"n={obj['n']} kmax={obj['kmax']}"
             + (f" modulus={obj['modulus']}" if obj.get("modulus") else "")]
    for k, row in enumerate(rows, start=1):
        lines.append(f"k={k:<3d} " + " ".join(x.rjust(width) for x in row))
    return "\n".join(lines)


def _render_certificate(obj: dict) -> str:
    rows = obj["rows"]
    width = max((len(x) for row in rows for x in row), default=1)
    lines = [f"n={obj['n']} kmax={obj['kmax']} (one sorted vertex column per line)"]
    for pos, row in enumerate(rows):
        lines.append(f"#{pos:<3d} " + " ".join(x.rjust(width) for x in row))
    lines.append("order: " + " ".join(str(v) for v in obj["order"]))
    return "\n".join(lines)


def cmd_invariants(args) -> int:
    g = _load_graph(args.graph)
    kmax = args.kmax if args.kmax is not None else g.n
    if args.mod is not None:
        table = walk_diagonal_table_mod(g, kmax, args.mod)
    else:
        table = walk_diagonal_table(g, kmax)
    if args.certificate:
        obj = certificate(table).to_json_dict()
        renderer = _render_certificate
    else:
        obj = table.to_json_dict()
        renderer = _render_table
    if args.format == "text":
        print(renderer(obj))
    else:
        _print_json(obj)
    return 0


def cmd_iso(args) -> int:
    g1 = _load_graph(args.graph_a)
    g2 = _load_graph(args.graph_b)
    cfg = IsoConfig(
        kmax=args.kmax,
        rounds=args.rounds,
        budget=args.budget,
        use_modular=args.mod is not None,
        modulus=args.mod if args.mod is not None else DEFAULT_MODULUS,
    )
    result = find_isomorphism(g1, g2, cfg)
    if args.format == "text":
        lines = [f"verdict: {result.verdict.value}"]
        if result.permutation is not None:
            lines.append("permutation: " + " ".join(str(v) for v in result.permutation.mapping))
        if result.witness is not None:
            lines.append(f"witness: {result.witness.kind} (position {result.witness.position})")
        lines.append(f"nodes: {result.stats.nodes} classes: {result.stats.classes}")
        print("\n".join(lines))
    else:
        _print_json(result.to_json_dict())
    return _ISO_EXIT[result.verdict]


def cmd_charpoly(args) -> int:
    g = _load_graph(args.graph)
    table = walk_diagonal_table(g, g.n)
    poly = charpoly_from_traces(power_traces(table), g.n)
    obj = poly.to_json_dict()
    obj["text"] = poly.format_text()
    if args.format == "text":
        print(obj["text"])
    else:
        _print_json(obj)
    return 0


def cmd_deleted(args) -> int:
    g = _load_graph(args.graph)
    table = walk_diagonal_table(g, g.n)
    poly = charpoly_from_traces(power_traces(table), g.n)
    deleted = vertex_deleted_charpolys(table, poly)
    obj = deleted.to_json_dict()
    obj["derivative_identity"] = check_derivative_identity(deleted, poly)
    if args.format == "text":
        lines = [f"charpoly: {poly.format_text()}"]
        for i, q in enumerate(deleted.polys):
            lines.append(f"delete {i}: {q.format_text()}")
        lines.append(f"sum equals derivative: {obj['derivative_identity']}")
        print("\n".join(lines))
    else:
        _print_json(obj)
    return 0


def cmd_reconstruct(args) -> int:
    if args.table is not None:
        raw = json.loads(Path(args.table).read_text()
                         if args.table != "-" else sys.stdin.read())
        table = InvariantTable.from_json_dict(raw)
    else:
        if args.graph is None:
            raise ValueError("give a graph file or --table")
        g = _load_graph(args.graph)
        kmax = args.kmax if args.kmax is not None else g.n
        table = walk_diagonal_table(g, max(kmax, g.n))
    result = reconstruct_adjacency(table)
    if args.format == "text":
        lines = [f"status: {result.status.value}"]
        if result.note:
            lines.append(f"note: {result.note}")
        if result.spectrum is not None:
            eig = " ".join(f"{x:.6f}" for x in result.spectrum.eigenvalues)
            lines.append(f"eigenvalues: {eig}")
        if result.graph is not None:
            lines.append(f"graph6: {write_graph6(result.graph)}")
        print("\n".join(lines))
    else:
        _print_json(result.to_json_dict())
    return 0


def cmd_gen(args) -> int:
    name = args.name if args.name is not None else args.fixture
    if args.random is not None:
        if name is not None:
            raise ValueError("give a fixture name or --random, not both")
        n, p = args.random
        g = random_graph(int(n), float(p), args.seed)
    elif name is not None:
        g = fixture_graph(name)
    else:
        raise ValueError("give a fixture name or --random N P")
    line = write_graph6(g)
    if args.format == "text":
        print(line)
    else:
        _print_json({"type": "graph", "n": g.n, "edges": g.edge_count,
                     "graph6": line})
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="walkiso",
                     description="walk-count invariants and graph isomorphism")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("invariants", parents=[], help="walk-count table or certificate")
    p.add_argument("graph", help="graph file (graph6 or edge list), - for stdin")
    p.add_argument("--kmax", type=int, default=None, help="highest power (default n)")
    p.add_argument("--mod", type=int, default=None, help="reduce entries modulo M")
    p.add_argument("--certificate", action="store_true", help="sorted certificate")
    fmt(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("iso", help="decide isomorphism of two graphs")
    p.add_argument("graph_a")
    p.add_argument("graph_b")
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--rounds", type=int, default=2, help="refinement rounds")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    p.add_argument("--mod", type=int, default=None,
                   help="enable the modular certificate prefilter with this modulus")
    fmt(p)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("charpoly", help="characteristic polynomial from walk counts")
    p.add_argument("graph")
    fmt(p)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("deleted", help="vertex-deleted characteristic polynomials")
    p.add_argument("graph")
    fmt(p)
    p.set_defaults(func=cmd_deleted)

    p = sub.add_parser("reconstruct", help="rebuild a graph from its walk table")
    p.add_argument("graph", nargs="?", default=None)
    p.add_argument("--table", default=None, help="JSON walk table instead of a graph")
    p.add_argument("--kmax", type=int, default=None)
    fmt(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("gen", help="emit a named or random graph as graph6")
    p.add_argument("name", nargs="?", default=None,
                   help="shrikhande | rook44 | petersen | kN | pathN | cycleN")
    p.add_argument("--fixture", default=None, help="alias for the positional name")
    p.add_argument("--random", nargs=2, metavar=("N", "P"), default=None,
                   help="random graph on N vertices with edge probability P")
    p.add_argument("--seed", type=int, default=0)
    fmt(p)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
