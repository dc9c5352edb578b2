"""Command-line front end.

Exit codes: 0 when every assertion holds, 1 when an assertion fails (a
requested pair is absent, a campaign reports unsolved instances or contract
errors), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Iterator

from twocycles.graphs import (
    ContractViolation,
    Graph,
    InputError,
    encode_graph6,
    parse_edgelist,
    parse_graph6,
    sigma2,
)
from twocycles.harness import (
    MODES,
    enumerate_labeled,
    probe_open_question,
    verify_stream,
)
from twocycles.solver import STRATEGIES, find_disjoint_cycles
from twocycles.structure import classify_near_hamiltonian, gen_family, verify_witness


def _read_graph_arg(arg: str) -> Graph:
    """Accept a literal graph6 line, a file path, or '-' for stdin.

    File and stdin content may be graph6 or the 'n m' edge-list format;
    both are tried and the graph6 diagnostic wins if neither fits.
    """
    if arg == "-":
        text = sys.stdin.read()
    elif os.path.exists(arg):
        with open(arg, encoding="ascii") as fh:
            text = fh.read()
    else:
        text = arg
    stripped = text.strip()
    if not stripped:
        raise InputError("empty graph input")
    try:
        return parse_graph6(stripped.splitlines()[0])
    except InputError as g6_error:
        try:
            return parse_edgelist(text)
        except InputError:
            raise g6_error from None


def _vertex_list(mask: int) -> list[int]:
    return [v for v in range(mask.bit_length()) if mask >> v & 1]


def _stream_lines(path: str) -> Iterator[str]:
    with open(path, encoding="ascii") as fh:
        yield from fh


def _cmd_solve(args: argparse.Namespace) -> int:
    g = _read_graph_arg(args.graph)
    cert, trace = find_disjoint_cycles(g, args.n1, args.n2, strategy=args.strategy)
    result = {
        "graph6": encode_graph6(g),
        "n": g.n,
        "sigma2": sigma2(g),
        "n1": args.n1,
        "n2": args.n2,
        "strategy": args.strategy,
        "found": cert is not None,
        "fallback": any(step.fallback for step in trace.steps),
        "trace": [
            step.label + (f":{step.info['route']}" if step.info.get("route") else "")
            for step in trace.steps
        ],
    }
    if cert is not None:
        result["cycle1"] = list(cert.c1.vertices)
        result["cycle2"] = list(cert.c2.vertices)
    print(json.dumps(result))
    return 0 if cert is not None else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    if (args.n is None) == (args.input is None):
        raise InputError("pick exactly one of --n and --input")
    if args.n is not None:
        source = enumerate_labeled(args.n, args.sigma2_min)
        corpus = f"labeled n={args.n}"
    else:
        source = _stream_lines(args.input)
        corpus = args.input
    report = verify_stream(
        source, args.mode, workers=args.workers, corpus=corpus, jsonl_path=args.jsonl
    )
    for line in report.json_lines():
        print(line)
    return 0 if report.passed else 1


def _cmd_enumerate(args: argparse.Namespace) -> int:
    for g in enumerate_labeled(args.n, args.sigma2_min):
        print(encode_graph6(g))
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    print(encode_graph6(gen_family(args.family)))
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    g = _read_graph_arg(args.graph)
    try:
        sc = classify_near_hamiltonian(g)
    except ContractViolation as exc:
        print(json.dumps({"graph6": encode_graph6(g), "error": str(exc)}))
        return 1
    result = {"graph6": encode_graph6(g), "kind": sc.kind, "verified": verify_witness(g, sc)}
    if sc.kind == "hamilton_cycle":
        result["cycle"] = list(sc.cycle.vertices)
    elif sc.kind == "near_bipartite":
        result["independent_side"] = _vertex_list(sc.side_s)
        result["complete_side"] = _vertex_list(sc.side_t)
    else:
        result["cut_vertex"] = sc.cut_vertex
        result["clique_a"] = _vertex_list(sc.clique_a)
        result["clique_b"] = _vertex_list(sc.clique_b)
    print(json.dumps(result))
    return 0 if result["verified"] else 1


def _cmd_probe(args: argparse.Namespace) -> int:
    if (args.n is None) == (args.input is None):
        raise InputError("pick exactly one of --n and --input")
    if args.n is not None:
        source = enumerate_labeled(args.n)
        corpus = f"labeled n={args.n}"
    else:
        source = _stream_lines(args.input)
        corpus = args.input
    report = probe_open_question(
        source,
        parity_filter=args.parity_filter,
        workers=args.workers,
        corpus=corpus,
        jsonl_path=args.jsonl,
    )
    for line in report.json_lines():
        print(line)
    return 0 if report.contract_errors == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twocycles",
        description="Disjoint cycle pairs with prescribed lengths under degree-sum bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find two disjoint cycles of given lengths")
    p.add_argument("graph", help="graph6 line, edge-list file, or - for stdin")
    p.add_argument("--n1", type=int, required=True, help="first cycle length")
    p.add_argument("--n2", type=int, required=True, help="second cycle length")
    p.add_argument("--strategy", choices=STRATEGIES, default="proof_first")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--n", type=int, help="in-process labeled exhaustion, 3..8")
    p.add_argument("--input", help="graph6 file, one graph per line")
    p.add_argument("--sigma2-min", type=float, default=0, help="threshold for --n")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--jsonl", help="also write the report to this path")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("enumerate", help="print labeled graphs as graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma2-min", type=float, default=0)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("gen", help="build a named family, e.g. B(3,4) or J(K1,U(K3,K4))")
    p.add_argument("family", help="K<k>, E<k>, B(a,b), J(...), U(...)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("classify", help="structure trichotomy for one graph")
    p.add_argument("graph", help="graph6 line, edge-list file, or - for stdin")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("probe", help="hunt for sigma2 = n+1 graphs missing a pair")
    p.add_argument("--n", type=int, help="in-process labeled exhaustion, 3..8")
    p.add_argument("--input", help="graph6 file, one graph per line")
    p.add_argument("--parity-filter", choices=("some_even", "all"), default="some_even")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--jsonl", help="also write the report to this path")
    p.set_defaults(func=_cmd_probe)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
