"""Exact spanning searches and the constructive path/cycle lemmas."""

from __future__ import annotations

from itertools import combinations, permutations

import pytest

from twocycles.graphs import (
    ContractViolation,
    Cycle,
    InputError,
    Path,
    build_graph,
    is_cycle,
    is_path,
    mask_of,
)
from twocycles.hamilton import (
    absorb_pair,
    close_path_ore,
    find_cycle_of_length,
    find_hamilton_cycle,
    find_hamilton_path,
    find_hamilton_path_between,
    hamilton_connected_by_sigma,
    rotate_endpoints,
)
from twocycles.solver import SolveTrace

from conftest import all_labeled, complete_graph, random_graph


def cycle_graph(n: int):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return build_graph(10, outer + inner + spokes)


def has_spanning_cycle_brute(g, within=None):
    vs = g.full_mask if within is None else within
    verts = [v for v in range(g.n) if vs >> v & 1]
    if len(verts) < 3:
        return False
    first = verts[0]
    for perm in permutations(verts[1:]):
        seq = (first,) + perm
        if all(g.has_edge(seq[i], seq[i + 1]) for i in range(len(seq) - 1)) and g.has_edge(
            seq[-1], first
        ):
            return True
    return False


class TestExactSearches:
    def test_cycle_found_on_easy_graphs(self):
        for g in (complete_graph(5), cycle_graph(6)):
            c = find_hamilton_cycle(g)
            assert c is not None and is_cycle(g, c.vertices)
            assert c.mask == g.full_mask

    def test_petersen_has_no_spanning_cycle(self):
        assert find_hamilton_cycle(petersen()) is None

    def test_within_restriction(self):
        g = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)])
        assert find_hamilton_cycle(g, within=0b000111) is not None
        assert find_hamilton_cycle(g, within=0b111000) is None

    def test_presence_matches_permutation_scan(self):
        for g in all_labeled(5):
            got = find_hamilton_cycle(g)
            assert (got is not None) == has_spanning_cycle_brute(g)
            if got is not None:
                assert is_cycle(g, got.vertices) and got.mask == g.full_mask

    def test_path_between_respects_ends(self):
        g = complete_graph(5)
        p = find_hamilton_path_between(g, 1, 3)
        assert p is not None and p.ends == (1, 3) and p.mask == g.full_mask
        path4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
        assert find_hamilton_path_between(path4, 0, 3) is not None
        assert find_hamilton_path_between(path4, 0, 2) is None

    def test_free_path_search(self, rng):
        for _ in range(80):
            g = random_graph(rng, 6, rng.random())
            got = find_hamilton_path(g)
            brute = any(
                all(g.has_edge(p[i], p[i + 1]) for i in range(5))
                for p in permutations(range(6))
            )
            assert (got is not None) == brute
            if got is not None:
                assert is_path(g, got.vertices) and got.mask == g.full_mask

    def test_fixed_length_cycles(self):
        c6 = cycle_graph(6)
        assert find_cycle_of_length(c6, 6) is not None
        assert find_cycle_of_length(c6, 4) is None
        k5 = complete_graph(5)
        for k in (3, 4, 5):
            got = find_cycle_of_length(k5, k)
            assert got is not None and len(got) == k
        assert find_cycle_of_length(k5, 6) is None


class TestClosePathOre:
    def test_adjacent_ends_close_directly(self):
        g = cycle_graph(5)
        c = close_path_ore(g, Path((0, 1, 2, 3, 4)))
        assert is_cycle(g, c.vertices) and c.mask == 0b11111

    def test_crossing_chords_used(self):
        g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 1), (0, 2)])
        c = close_path_ore(g, Path((0, 1, 2, 3, 4)))
        assert is_cycle(g, c.vertices) and c.mask == 0b11111

    def test_too_short_rejected(self):
        g = complete_graph(3)
        with pytest.raises(InputError):
            close_path_ore(g, Path((0, 1)))

    def test_light_ends_violate_contract(self):
        g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(ContractViolation) as err:
            close_path_ore(g, Path((0, 1, 2, 3)))
        assert "degree sum" in str(err.value)

    def test_random_qualified_instances(self, rng):
        for _ in range(400):
            n = rng.randint(5, 11)
            order = list(range(n))
            rng.shuffle(order)
            edges = {(min(a, b), max(a, b)) for a, b in zip(order, order[1:])}
            for a, b in combinations(range(n), 2):
                if rng.random() < 0.35:
                    edges.add((a, b))
            g = build_graph(n, edges)
            u, v = order[0], order[-1]
            while not g.has_edge(u, v) and g.degree(u) + g.degree(v) < n:
                w = rng.randrange(n)
                z = u if rng.random() < 0.5 else v
                if w not in (u, v) and not g.has_edge(z, w):
                    edges.add((min(z, w), max(z, w)))
                    g = build_graph(n, edges)
            c = close_path_ore(g, Path(tuple(order)))
            assert is_cycle(g, c.vertices) and c.mask == g.full_mask


class TestRotateEndpoints:
    def test_consecutive_pair_is_an_arc(self):
        g = cycle_graph(6)
        p = rotate_endpoints(g, Cycle((0, 1, 2, 3, 4, 5)), 2, 3)
        assert p is not None and set(p.ends) == {2, 3} and p.mask == g.full_mask

    def test_bad_endpoints_rejected(self):
        g = cycle_graph(5)
        c = Cycle((0, 1, 2, 3, 4))
        with pytest.raises(InputError):
            rotate_endpoints(g, c, 2, 2)

    def test_fallback_recorded_when_bound_fails(self):
        g = cycle_graph(6)
        trace = SolveTrace()
        p = rotate_endpoints(g, Cycle((0, 1, 2, 3, 4, 5)), 0, 3)
        assert p is None
        rotate_endpoints(g, Cycle((0, 1, 2, 3, 4, 5)), 0, 3, trace=trace)
        assert trace.used_fallback()

    def test_random_dense_instances(self, rng):
        for _ in range(200):
            n = rng.randint(6, 9)
            g = random_graph(rng, n, 0.75)
            c = find_hamilton_cycle(g)
            if c is None:
                continue
            u, v = rng.sample(c.vertices, 2)
            p = rotate_endpoints(g, c, u, v)
            if p is not None:
                assert is_path(g, p.vertices)
                assert set(p.ends) == {u, v} and p.mask == c.mask


class TestAbsorbPair:
    def test_adjacent_pair_inserted_in_one_slot(self):
        g = build_graph(5, [(0, 1), (1, 2), (0, 3), (3, 4), (4, 1), (2, 3), (2, 4), (0, 4)])
        p = absorb_pair(g, Path((0, 1, 2)), 3, 4)
        assert is_path(g, p.vertices) and p.mask == 0b11111

    def test_precondition_enforced(self):
        g = build_graph(5, [(0, 1), (1, 2), (0, 3), (2, 4)])
        with pytest.raises(InputError):
            absorb_pair(g, Path((0, 1, 2)), 3, 4)
        with pytest.raises(InputError):
            absorb_pair(complete_graph(5), Path((0, 1, 2)), 2, 4)

    def test_random_qualified_instances(self, rng):
        for _ in range(400):
            n = rng.randint(6, 10)
            k = n - 2
            u, v = k, k + 1
            order = list(range(k))
            rng.shuffle(order)
            edges = {(min(a, b), max(a, b)) for a, b in zip(order, order[1:])}
            for a, b in combinations(range(k), 2):
                if rng.random() < 0.3:
                    edges.add((a, b))
            if rng.random() < 0.7:
                edges.add((u, v))
            for w in range(k):
                if rng.random() < 0.5:
                    edges.add((w, u))
                if rng.random() < 0.5:
                    edges.add((w, v))
            g = build_graph(n, edges)
            pmask = mask_of(order)
            while g.degree(u, within=pmask) + g.degree(v, within=pmask) < k + 2:
                w = rng.randrange(k)
                z = u if rng.random() < 0.5 else v
                if not g.has_edge(w, z):
                    edges.add((min(w, z), max(w, z)))
                    g = build_graph(n, edges)
            p = absorb_pair(g, Path(tuple(order)), u, v)
            assert is_path(g, p.vertices) and p.mask == g.full_mask


class TestHamiltonConnected:
    def test_degree_bound_cases(self):
        assert hamilton_connected_by_sigma(complete_graph(4))
        assert not hamilton_connected_by_sigma(cycle_graph(5))
        k6_minus_matching = build_graph(
            6, [(a, b) for a, b in combinations(range(6), 2) if (a, b) not in ((0, 1), (2, 3), (4, 5))]
        )
        assert hamilton_connected_by_sigma(k6_minus_matching)

    def test_bound_is_honest_on_small_graphs(self):
        # whenever the bound says yes, every pair really has a spanning path
        for g in all_labeled(5):
            if not hamilton_connected_by_sigma(g):
                continue
            for u, v in combinations(range(5), 2):
                assert find_hamilton_path_between(g, u, v) is not None
