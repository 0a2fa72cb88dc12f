"""Command line interface.

Graphs are given as --graph6 CODE, or as --graph SPEC in a small language:
``path:4``, ``complete:3``, ``star:3``, ``cycle:5``, ``edgeless:2``,
``multipartite:1,2,2``, ``complement:path:4``.  A comma joins parts by
disjoint union and ``+`` joins parts by the join product (``+`` binds
looser), so ``--join complete:1+complete:1,complete:2`` is K1 * (K1 + K2).

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .catalog import run_catalog
from .cograph import CographError, cotree, join_split
from .graph import (
    Graph,
    GraphError,
    disjoint_union,
    is_connected,
    isomorphism_classes,
    join_product,
    make_named,
    parse_graph6,
    write_graph6,
)
from .groebner import ideal_equal, intersect_all
from .homology import OracleError, ResourceLimit, homological_summary
from .poly import DEFAULT_CHARACTERISTIC, Field, PolyError, gbei_generators
from .primedec import CutSetError, cut_sets, prime_components, prime_generators
from .regularity import FormulaConflict, PreconditionError, RegularityMismatch, classify, reg
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

FAMILIES = {
    "path": "path",
    "complete": "complete",
    "star": "star",
    "cycle": "cycle",
    "edgeless": "edgeless",
    "multipartite": "complete_multipartite",
}


class UsageError(ValueError):
    pass


def _named(token: str) -> Graph:
    family, _, rest = token.partition(":")
    if family == "complement":
        return make_named("complement", _named(rest))
    if family not in FAMILIES or not rest:
        raise UsageError(f"cannot read graph {token!r}; expected e.g. path:4 or multipartite:1,2")
    try:
        args = [int(a) for a in rest.split(",")]
    except ValueError:
        raise UsageError(f"sizes in {token!r} must be integers") from None
    if family != "multipartite" and len(args) != 1:
        raise UsageError(f"{family} takes one size")
    return make_named(FAMILIES[family], *args)


def _union(text: str) -> Graph:
    parts: list[str] = []
    for piece in text.split(","):
        piece = piece.strip()
        if piece.isdigit() and parts:
            parts[-1] += "," + piece
        elif piece:
            parts.append(piece)
    if not parts:
        raise UsageError("empty graph description")
    graphs = [_named(p) for p in parts]
    return graphs[0] if len(graphs) == 1 else disjoint_union(graphs)


def parse_graph_spec(text: str) -> Graph:
    """Graph from the named mini-language; '+' is join, ',' is disjoint union."""
    pieces = [p for p in text.split("+")]
    graphs = [_union(p) for p in pieces]
    return graphs[0] if len(graphs) == 1 else join_product(graphs)


def _graph(args) -> Graph:
    given = [x for x in (args.graph, args.graph6, args.join) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --graph, --graph6, --join")
    if args.graph6 is not None:
        return parse_graph6(args.graph6)
    if args.join is not None and "+" not in args.join:
        raise UsageError("--join needs at least two parts separated by '+'")
    return parse_graph_spec(args.graph if args.graph is not None else args.join)


def _field(args) -> Field:
    return Field(args.field_char)


def _emit(args, payload, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _sets_text(sets) -> str:
    return "{" + ", ".join("{" + ",".join(map(str, sorted(T))) + "}" if T else "∅" for T in sets) + "}"


# --------------------------------------------------------------------------
# commands


def cmd_ideal(args) -> int:
    G = _graph(args)
    if G.num_edges == 0:
        raise UsageError("the graph has no edges, so J is the zero ideal")
    I = gbei_generators(G, args.m, _field(args), args.order)
    texts = [g.to_text(args.order) for g in I.generators]
    payload = {"graph6": write_graph6(G), **I.to_json()}
    _emit(args, payload, f"{len(texts)} generators\n" + "\n".join(texts))
    return EXIT_OK


def cmd_cutsets(args) -> int:
    G = _graph(args)
    fam = cut_sets(G)
    _emit(args, {"graph6": write_graph6(G), "cut_sets": fam.as_lists()}, _sets_text(fam))
    return EXIT_OK


def cmd_primes(args) -> int:
    G = _graph(args)
    comps = prime_components(G, args.m)
    payload = {"graph6": write_graph6(G), "m": args.m, "primes": [P.to_json() for P in comps]}
    lines = []
    for P in comps:
        blocks = " ".join("{" + ",".join(map(str, sorted(c))) + "}" for c in P.cliques)
        lines.append(f"T={_sets_text([P.T])[1:-1]}  killed columns {sorted(P.T) or '-'}  blocks {blocks}")
    status = EXIT_OK
    if args.check:
        J = gbei_generators(G, args.m, _field(args))
        ok = ideal_equal(J, intersect_all(prime_generators(P, _field(args)) for P in comps))
        payload["verified"] = ok
        lines.append("decomposition verified" if ok else "decomposition FAILED")
        status = EXIT_OK if ok else EXIT_FAIL
    _emit(args, payload, "\n".join(lines))
    return status


def cmd_cograph(args) -> int:
    G = _graph(args)
    try:
        tree = cotree(G)
    except CographError as err:
        witness = list(err.witness) if err.witness else None
        _emit(args, {"graph6": write_graph6(G), "p4_free": False, "witness": witness},
              f"not P4-free: induced P4 {tuple(witness)}")
        return EXIT_OK
    payload = {"graph6": write_graph6(G), "p4_free": True, "cotree": tree.to_json()}
    if is_connected(G) and G.n >= 2:
        V1, V2, cert = join_split(G)
        payload["split"] = {"V1": sorted(V1), "V2": sorted(V2), "certificate": cert.to_json()}
    _emit(args, payload, json.dumps(tree.to_json(), sort_keys=True))
    return EXIT_OK


def cmd_reg(args) -> int:
    G = _graph(args)
    r = reg(G, args.m, args.mode, field=_field(args))
    text = (f"reg = {r.value}" if r.exact else f"{r.lower} <= reg <= {r.upper}") + f"  [{r.provenance}]"
    _emit(args, {"graph6": write_graph6(G), "m": args.m, **r.to_json()}, text)
    return EXIT_OK


def cmd_summary(args) -> int:
    G = _graph(args)
    s = homological_summary(G, args.m, _field(args), args.method)
    payload = {"graph6": write_graph6(G), "m": args.m, **s.to_json()}
    lines = [f"{k} = {v}" for k, v in s.to_json().items() if k != "betti"]
    if s.betti is not None:
        lines.append(s.betti.render())
    try:
        c = classify(G, args.m)
        payload["classification"] = c.to_json()
        lines.append(f"classification: {c.matched_case}")
    except PreconditionError:
        pass
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    reports = run_suite(args.suite)
    ok = all(r.ok for r in reports)
    text = "\n".join([r.line() for r in reports] + [f"  {f}" for r in reports for f in r.failures[:10]])
    _emit(args, {"ok": ok, "suites": [r.to_json() for r in reports]}, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_catalog(args) -> int:
    try:
        ms = [int(x) for x in args.m.split(",")]
    except ValueError:
        raise UsageError("--m takes a comma separated list of integers") from None
    if args.input == "-":
        counts = run_catalog(sys.stdin, ms, args.output, args.resume, args.workers, not args.formula_only,
                             not args.no_timings)
    else:
        with open(args.input) as fh:
            counts = run_catalog(fh, ms, args.output, args.resume, args.workers, not args.formula_only,
                                 not args.no_timings)
    _emit(args, counts, " ".join(f"{k}={v}" for k, v in counts.items()))
    return EXIT_OK


def cmd_graphs(args) -> int:
    out = [G for G in isomorphism_classes(args.n) if not args.connected or is_connected(G)]
    codes = [write_graph6(G) for G in out]
    _emit(args, codes, "\n".join(codes))
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine readable output")
    common.add_argument("--field-char", type=int, default=_env_int("GBEI_FIELD_CHAR", DEFAULT_CHARACTERISTIC),
                        help="coefficient field characteristic, 0 for the rationals (env GBEI_FIELD_CHAR)")
    common.add_argument("--max-vars", type=int, default=None,
                        help="largest N = m*n handled by Koszul homology (env GBEI_MAX_VARS)")
    common.add_argument("--max-degree", type=int, default=None,
                        help="largest Koszul degree cutoff (env GBEI_MAX_DEGREE)")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--graph", help="named graph, e.g. path:4 or complete:2,complete:2")
    graph.add_argument("--graph6", help="graph6 record")
    graph.add_argument("--join", help="join of named parts separated by '+'")

    rows = argparse.ArgumentParser(add_help=False)
    rows.add_argument("--m", type=int, required=True, help="number of rows (K_m)")

    parser = argparse.ArgumentParser(prog="gbei", description="Generalized binomial edge ideals J_{K_m,G}.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideal", parents=[common, graph, rows], help="list the 2-minor generators")
    p.add_argument("--order", default="degrevlex", choices=["degrevlex", "lex"])
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("cutsets", parents=[common, graph], help="sets with the cut vertex property")
    p.set_defaults(func=cmd_cutsets)

    p = sub.add_parser("primes", parents=[common, graph, rows], help="minimal primes P_T")
    p.add_argument("--check", action="store_true", help="verify J equals the intersection of the primes")
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("cograph", parents=[common, graph], help="cotree or an induced P4")
    p.set_defaults(func=cmd_cograph)

    p = sub.add_parser("reg", parents=[common, graph, rows], help="regularity of S/J")
    p.add_argument("--mode", default="formula", choices=["formula", "oracle", "both"])
    p.set_defaults(func=cmd_reg)

    p = sub.add_parser("summary", parents=[common, graph, rows], help="Betti table, depth, CM and Gorenstein")
    p.add_argument("--method", default="auto", choices=["auto", "koszul", "initial-ideal"])
    p.set_defaults(func=cmd_summary)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, help=", ".join(list(SUITES) + ["all"]))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="JSONL records for a graph6 stream")
    p.add_argument("--input", required=True, help="graph6 file, or - for stdin")
    p.add_argument("--m", required=True, help="comma separated row counts")
    p.add_argument("--output", required=True, help="JSONL file")
    p.add_argument("--resume", action="store_true", help="skip (graph6, m) keys already in the output")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--formula-only", action="store_true", help="skip the homology oracle")
    p.add_argument("--no-timings", action="store_true", help="omit timings for byte-stable output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("graphs", parents=[common], help="isomorphism class representatives as graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--connected", action="store_true")
    p.set_defaults(func=cmd_graphs)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {"GBEI_MAX_VARS": args.max_vars, "GBEI_MAX_DEGREE": args.max_degree}
    saved = {k: os.environ.get(k) for k in overrides}
    for k, v in overrides.items():
        if v is not None:
            os.environ[k] = str(v)
    try:
        return _dispatch(args)
    finally:
        for k, v in saved.items():
            if v is None:
                os.environ.pop(k, None)
            else:
                os.environ[k] = v


def _dispatch(args) -> int:
    try:
        return args.func(args)
    except (ResourceLimit, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RESOURCE
    except CutSetError as err:
        code = EXIT_RESOURCE if "exhaustive-limit" in str(err) else EXIT_USAGE
        print(f"error: {err}", file=sys.stderr)
        return code
    except (RegularityMismatch, FormulaConflict, OracleError) as err:
        print(f"verification failure: {err}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, GraphError, PolyError, PreconditionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
