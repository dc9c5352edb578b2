"""Batch enumeration, verification campaigns, and report emission.

Campaign modes check one statement each over a stream of graphs:

- ``theorem15``: every sigma2-qualified graph has disjoint cycles for every
  length split, found constructively.
- ``elzahar``: the minimum-degree condition per split guarantees the pair.
- ``ore_bondy``: sigma2 >= n forces pancyclicity or the balanced complete
  bipartite graph.
- ``lemma27``: the structure trichotomy agrees with its brute-force twin and
  every emitted witness re-verifies.

Streams are processed in fixed chunks with an ordered fan-in, so the report
is identical for any worker count; only the wall time moves.
"""

from __future__ import annotations

import json
import os
import time
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations
from multiprocessing import Pool

from twocycles.graphs import (
    ContractViolation,
    Graph,
    InputError,
    encode_graph6,
    parse_graph6,
    sigma2,
    validate_cert,
)
from twocycles.hamilton import find_cycle_of_length
from twocycles.solver import brute_force_oracle, find_disjoint_cycles
from twocycles.structure import (
    classify_near_hamiltonian,
    classify_near_hamiltonian_brute,
    elzahar_condition,
    is_balanced_complete_bipartite,
    same_structure,
    verify_witness,
)

MODES = ("theorem15", "elzahar", "ore_bondy", "lemma27")

WORKER_ENV = "TWOCYCLES_MAX_WORKERS"

CHUNK_SIZE = 1024

_ENUM_CAP = 8


def enumerate_labeled(n: int, sigma2_min: float = 0) -> Iterator[Graph]:
    """Every labeled graph on n vertices clearing the sigma2 threshold, in
    lexicographic edge-mask order.

    Bit i of the mask is the i-th vertex pair in lexicographic order, and
    masks run from empty to complete. Complete graphs have no nonadjacent
    pair, so they clear every threshold; passing ``math.inf`` selects
    exactly them. Beyond n = 8 the labeled space is out of reach, use
    graph6 streams instead.
    """
    if not 3 <= n <= _ENUM_CAP:
        raise InputError(f"labeled exhaustion covers 3 <= n <= {_ENUM_CAP}, got {n}")
    pairs = list(combinations(range(n), 2))
    npairs = len(pairs)
    for mask in range(1 << npairs):
        adj = [0] * n
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            u, v = pairs[i]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            m &= m - 1
        if sigma2_min > 0:
            best = None
            for u in range(n):
                row = adj[u]
                du = row.bit_count()
                for v in range(u + 1, n):
                    if not row >> v & 1:
                        s = du + adj[v].bit_count()
                        if best is None or s < best:
                            best = s
            if best is not None and best < sigma2_min:
                continue
        yield Graph(n, tuple(adj))


@dataclass
class Report:
    """Aggregate outcome of one campaign run.

    Graph counts sit next to instance counts because one graph usually
    yields several (n1, n2) instances. ``solved + unsolved + skipped ==
    instances`` always holds, and a passing assertion run has zero unsolved
    and zero contract errors.
    """

    corpus: str
    mode: str
    workers: int = 1
    graphs_total: int = 0
    graphs_qualified: int = 0
    graphs_solved: int = 0
    instances: int = 0
    solved: int = 0
    unsolved: int = 0
    skipped: int = 0
    fallback_used: int = 0
    contract_errors: int = 0
    parse_errors: int = 0
    wall_time: float = 0.0
    by_split: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)
    diagnostics: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.unsolved == 0 and self.contract_errors == 0

    def merge_partial(self, part: dict) -> None:
        for key in (
            "graphs_total",
            "graphs_qualified",
            "graphs_solved",
            "instances",
            "solved",
            "unsolved",
            "skipped",
            "fallback_used",
            "contract_errors",
            "parse_errors",
        ):
            setattr(self, key, getattr(self, key) + part[key])
        for split, (inst, sol) in part["by_split"].items():
            slot = self.by_split.setdefault(split, [0, 0])
            slot[0] += inst
            slot[1] += sol
        self.failures.extend(part["failures"])
        self.findings.extend(part["findings"])
        self.diagnostics.extend(part["diagnostics"])

    def summary(self) -> dict:
        return {
            "kind": "summary",
            "corpus": self.corpus,
            "mode": self.mode,
            "workers": self.workers,
            "graphs_total": self.graphs_total,
            "graphs_qualified": self.graphs_qualified,
            "graphs_solved": self.graphs_solved,
            "instances": self.instances,
            "solved": self.solved,
            "unsolved": self.unsolved,
            "skipped": self.skipped,
            "fallback_used": self.fallback_used,
            "contract_errors": self.contract_errors,
            "parse_errors": self.parse_errors,
            "wall_time": round(self.wall_time, 3),
            "passed": self.passed,
            "by_split": {
                f"{a},{b}": {"instances": inst, "solved": sol}
                for (a, b), (inst, sol) in sorted(self.by_split.items())
            },
        }

    def json_lines(self) -> Iterator[str]:
        yield json.dumps(self.summary(), sort_keys=True)
        for row in self.diagnostics:
            yield json.dumps({"kind": "diagnostic", **row}, sort_keys=True)
        for row in self.failures:
            yield json.dumps({"kind": "failure", **row}, sort_keys=True)
        for row in self.findings:
            yield json.dumps({"kind": "finding", **row}, sort_keys=True)

    def write_jsonl(self, path: str) -> None:
        with open(path, "w", encoding="ascii") as out:
            for line in self.json_lines():
                out.write(line + "\n")


def length_splits(n: int) -> list[tuple[int, int]]:
    """Unordered (n1, n2) splits with both parts at least 3, n1 <= n2."""
    return [(a, n - a) for a in range(3, n // 2 + 1)]


def _blank_partial() -> dict:
    return {
        "graphs_total": 0,
        "graphs_qualified": 0,
        "graphs_solved": 0,
        "instances": 0,
        "solved": 0,
        "unsolved": 0,
        "skipped": 0,
        "fallback_used": 0,
        "contract_errors": 0,
        "parse_errors": 0,
        "by_split": {},
        "failures": [],
        "findings": [],
        "diagnostics": [],
    }


def _bump_split(part: dict, split: tuple[int, int], solved: bool) -> None:
    slot = part["by_split"].setdefault(split, [0, 0])
    slot[0] += 1
    if solved:
        slot[1] += 1


def _theorem15_graph(g: Graph, line: str, part: dict) -> None:
    s2 = sigma2(g)
    if not (s2 is None or s2 >= g.n + 2):
        return
    part["graphs_qualified"] += 1
    all_ok = True
    for a, b in length_splits(g.n):
        part["instances"] += 1
        cert, trace = find_disjoint_cycles(g, a, b, strategy="proof_first")
        if any(step.fallback for step in trace.steps):
            part["fallback_used"] += 1
        ok = cert is not None and validate_cert(g, cert)
        _bump_split(part, (a, b), ok)
        if ok:
            part["solved"] += 1
        else:
            all_ok = False
            part["unsolved"] += 1
            part["failures"].append(
                {"graph6": line, "n1": a, "n2": b, "why": "no valid certificate"}
            )
    if all_ok:
        part["graphs_solved"] += 1


def _elzahar_graph(g: Graph, line: str, part: dict) -> None:
    qualified = False
    all_ok = True
    for a, b in length_splits(g.n):
        if not elzahar_condition(g, (a, b)):
            continue
        qualified = True
        part["instances"] += 1
        cert = brute_force_oracle(g, a, b)
        ok = cert is not None and validate_cert(g, cert)
        _bump_split(part, (a, b), ok)
        if ok:
            part["solved"] += 1
        else:
            all_ok = False
            part["unsolved"] += 1
            part["failures"].append(
                {"graph6": line, "n1": a, "n2": b, "why": "degree condition met, pair absent"}
            )
    if qualified:
        part["graphs_qualified"] += 1
        if all_ok:
            part["graphs_solved"] += 1


def _ore_bondy_graph(g: Graph, line: str, part: dict) -> None:
    s2 = sigma2(g)
    if not (s2 is None or s2 >= g.n):
        return
    part["graphs_qualified"] += 1
    part["instances"] += 1
    pancyclic = all(
        find_cycle_of_length(g, k) is not None for k in range(3, g.n + 1)
    )
    ok = pancyclic or is_balanced_complete_bipartite(g)
    if ok:
        part["solved"] += 1
        part["graphs_solved"] += 1
    else:
        part["unsolved"] += 1
        part["failures"].append(
            {"graph6": line, "why": "neither pancyclic nor balanced complete bipartite"}
        )


def _lemma27_graph(g: Graph, line: str, part: dict) -> None:
    s2 = sigma2(g)
    if g.n < 3 or not (s2 is None or s2 >= g.n - 1):
        return
    part["graphs_qualified"] += 1
    part["instances"] += 1
    fast = classify_near_hamiltonian(g)
    brute = classify_near_hamiltonian_brute(g)
    ok = (
        same_structure(fast, brute)
        and verify_witness(g, fast)
        and verify_witness(g, brute)
    )
    if ok:
        part["solved"] += 1
        part["graphs_solved"] += 1
    else:
        part["unsolved"] += 1
        part["failures"].append(
            {
                "graph6": line,
                "why": f"classifier split: direct {fast.kind}, brute {brute.kind}",
            }
        )


def _probe_graph(g: Graph, line: str, parity_filter: str, part: dict) -> None:
    s2 = sigma2(g)
    if s2 is None or s2 != g.n + 1:
        return
    part["graphs_qualified"] += 1
    all_ok = True
    for a, b in length_splits(g.n):
        part["instances"] += 1
        if parity_filter == "some_even" and a % 2 and b % 2:
            part["skipped"] += 1
            _bump_split(part, (a, b), False)
            continue
        cert = brute_force_oracle(g, a, b)
        ok = cert is not None and validate_cert(g, cert)
        _bump_split(part, (a, b), ok)
        if ok:
            part["solved"] += 1
        else:
            all_ok = False
            part["unsolved"] += 1
            part["findings"].append({"graph6": line, "n1": a, "n2": b, "sigma2": s2})
    if all_ok:
        part["graphs_solved"] += 1


def _work_chunk(chunk: list[tuple[int, str]], mode: str, parity_filter: str = "") -> dict:
    part = _blank_partial()
    for lineno, line in chunk:
        try:
            g = parse_graph6(line)
        except InputError as exc:
            part["parse_errors"] += 1
            part["diagnostics"].append({"line": lineno, "text": line, "why": str(exc)})
            continue
        part["graphs_total"] += 1
        try:
            if mode == "theorem15":
                _theorem15_graph(g, line, part)
            elif mode == "elzahar":
                _elzahar_graph(g, line, part)
            elif mode == "ore_bondy":
                _ore_bondy_graph(g, line, part)
            elif mode == "lemma27":
                _lemma27_graph(g, line, part)
            else:
                _probe_graph(g, line, parity_filter, part)
        except ContractViolation as exc:
            part["contract_errors"] += 1
            part["failures"].append({"graph6": line, "why": f"contract violation: {exc}"})
    return part


def cap_workers(requested: int) -> int:
    if requested < 1:
        raise InputError("worker count must be positive")
    cap = os.environ.get(WORKER_ENV)
    if cap is not None:
        try:
            limit = int(cap)
        except ValueError as exc:
            raise InputError(f"{WORKER_ENV} must be an integer, got {cap!r}") from exc
        if limit >= 1:
            return min(requested, limit)
    return requested


def _numbered_lines(source: Iterable[Graph | str]) -> Iterator[tuple[int, str]]:
    for lineno, item in enumerate(source, start=1):
        if isinstance(item, Graph):
            yield lineno, encode_graph6(item)
            continue
        text = item.strip()
        if text.startswith(">>graph6<<"):
            text = text[len(">>graph6<<"):]
        if text:
            yield lineno, text


def _chunked(items: Iterator[tuple[int, str]], size: int) -> Iterator[list[tuple[int, str]]]:
    chunk: list[tuple[int, str]] = []
    for item in items:
        chunk.append(item)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _run_campaign(
    source: Iterable[Graph | str],
    mode: str,
    workers: int,
    corpus: str,
    parity_filter: str = "",
    jsonl_path: str | None = None,
) -> Report:
    workers = cap_workers(workers)
    report = Report(corpus=corpus, mode=mode, workers=workers)
    start = time.monotonic()
    chunks = _chunked(_numbered_lines(source), CHUNK_SIZE)
    work = partial(_work_chunk, mode=mode, parity_filter=parity_filter)
    if workers == 1:
        for chunk in chunks:
            report.merge_partial(work(chunk))
    else:
        with Pool(workers) as pool:
            for part in pool.imap(work, chunks):
                report.merge_partial(part)
    report.wall_time = time.monotonic() - start
    if jsonl_path is not None:
        report.write_jsonl(jsonl_path)
    return report


def verify_stream(
    source: Iterable[Graph | str],
    mode: str,
    workers: int = 1,
    corpus: str = "stream",
    jsonl_path: str | None = None,
) -> Report:
    """Run one verification mode over a graph stream and aggregate a Report.

    The source may yield Graph objects or graph6 lines; corrupted lines are
    counted and reported without stopping the run.
    """
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}, pick one of {', '.join(MODES)}")
    return _run_campaign(source, mode, workers, corpus, jsonl_path=jsonl_path)


def probe_open_question(
    source: Iterable[Graph | str],
    parity_filter: str = "some_even",
    workers: int = 1,
    corpus: str = "stream",
    jsonl_path: str | None = None,
) -> Report:
    """Hunt for graphs with sigma2 exactly n + 1 missing some cycle pair.

    Whether that bound already forces a pair with an even length is open, so
    findings are research data rather than failures: each one is a graph6
    line plus the missing split. The some_even filter skips odd-odd splits,
    which the weaker bound provably cannot force.
    """
    if parity_filter not in ("some_even", "all"):
        raise InputError(f"unknown parity filter {parity_filter!r}")
    return _run_campaign(
        source, "probe", workers, corpus, parity_filter=parity_filter, jsonl_path=jsonl_path
    )
