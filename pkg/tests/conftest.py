"""Shared corpus access and small builders for the test suite."""

from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path

import pytest

from twocycles.graphs import Graph, build_graph

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

FIXTURE_COUNTS = {3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668}


def fixture_lines(n: int) -> list[str]:
    return (FIXTURE_DIR / f"graphs_n{n}.g6").read_text().splitlines()


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return build_graph(n, edges)


def all_labeled(n: int):
    """Every labeled graph on n vertices, written independently of the
    package's enumerator so the two can check each other."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield build_graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


@pytest.fixture(scope="session")
def rng() -> random.Random:
    return random.Random(0x5EED)
