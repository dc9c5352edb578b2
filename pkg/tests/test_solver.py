"""Constructive pipeline: oracle, small-cycle bootstrap, exchange search,
and the endgame constructions, each pinned to its exact route."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from twocycles.graphs import (
    ContractViolation,
    Cycle,
    InputError,
    build_graph,
    mask_of,
    sigma2,
    validate_cert,
)
from twocycles.solver import (
    Decomposition,
    Partition,
    SolveTrace,
    brute_force_oracle,
    find_disjoint_cycles,
    improve_partition,
    lemma26_decompose,
    prop1_small,
    solve_from_decomposition,
)
from twocycles.solver import _prop2
from twocycles.structure import gen_family

from conftest import complete_graph, random_graph
from twocycles.harness import enumerate_labeled


def K(vs):
    return list(combinations(vs, 2))


def cross(a, b):
    return [(x, y) for x in a for y in b]


def routes(trace: SolveTrace):
    return [(s.label, s.info.get("route", "")) for s in trace.steps]


def last_route(trace: SolveTrace):
    return routes(trace)[-1]


class TestOracle:
    def test_finds_pair_in_complete_graph(self):
        cert = brute_force_oracle(complete_graph(6), 3, 3)
        assert cert is not None and validate_cert(complete_graph(6), cert)

    def test_odd_length_absent_in_bipartite(self):
        g = gen_family("B(4,4)")
        assert brute_force_oracle(g, 3, 5) is None
        cert = brute_force_oracle(g, 4, 4)
        assert cert is not None and validate_cert(g, cert)

    def test_input_checks(self):
        with pytest.raises(InputError):
            brute_force_oracle(complete_graph(6), 2, 4)
        with pytest.raises(InputError):
            brute_force_oracle(complete_graph(6), 4, 4)

    def test_lengths_exceeding_order_allowed_when_slack(self):
        # n1 + n2 may undershoot n: the pair need not span
        g = complete_graph(8)
        cert = brute_force_oracle(g, 3, 3)
        assert cert is not None and validate_cert(g, cert)


class TestFindDisjointCycles:
    def test_bad_requests_rejected(self):
        g = complete_graph(8)
        with pytest.raises(InputError):
            find_disjoint_cycles(g, 2, 6)
        with pytest.raises(InputError):
            find_disjoint_cycles(g, 3, 4)
        with pytest.raises(InputError):
            find_disjoint_cycles(g, 4, 4, strategy="guess")

    def test_proof_only_rejects_unqualified(self):
        c8 = build_graph(8, [(i, (i + 1) % 8) for i in range(8)])
        with pytest.raises(InputError):
            find_disjoint_cycles(c8, 4, 4, strategy="proof_only")

    def test_proof_first_falls_back_below_threshold(self):
        g = gen_family("B(4,4)")
        cert, trace = find_disjoint_cycles(g, 4, 4)
        assert trace.used_fallback()
        assert trace.steps[0].info.get("reason") == "sigma2_below_threshold"
        assert cert is not None and validate_cert(g, cert)
        absent, trace2 = find_disjoint_cycles(g, 3, 5)
        assert absent is None and trace2.used_fallback()

    def test_oracle_only_skips_the_pipeline(self):
        cert, trace = find_disjoint_cycles(complete_graph(8), 3, 5, strategy="oracle_only")
        assert cert is not None
        assert trace.steps[0].info.get("reason") == "oracle_only"

    def test_certificate_lengths_follow_the_request(self):
        g = complete_graph(9)
        cert, _ = find_disjoint_cycles(g, 6, 3, strategy="proof_only")
        assert (cert.n1, cert.n2) == (6, 3)
        assert len(cert.c1) == 6 and len(cert.c2) == 3
        assert validate_cert(g, cert)

    def test_exhaustive_n6_matches_oracle(self):
        count = 0
        for g in enumerate_labeled(6, 8):
            cert, trace = find_disjoint_cycles(g, 3, 3, strategy="proof_only")
            assert validate_cert(g, cert)
            assert not trace.used_fallback()
            assert brute_force_oracle(g, 3, 3) is not None
            count += 1
        assert count == 76

    def test_random_qualified_deep_splits(self):
        rng = random.Random(97)
        solved = 0
        while solved < 60:
            n = rng.choice((10, 11, 12))
            g = random_graph(rng, n, rng.uniform(0.6, 0.95))
            s = sigma2(g)
            if not (s is None or s >= n + 2):
                continue
            n1 = rng.choice([a for a in range(5, n - 4) if n - a >= 5])
            cert, trace = find_disjoint_cycles(g, n1, n - n1, strategy="proof_only")
            assert validate_cert(g, cert)
            assert not trace.used_fallback()
            solved += 1


def prop1_case(name, g, small, want_route):
    trace = SolveTrace()
    cert = prop1_small(g, small, trace)
    assert validate_cert(g, cert), name
    assert last_route(trace) == want_route, (name, routes(trace))
    return cert


class TestProp1Bootstrap:
    def test_input_checks(self):
        with pytest.raises(InputError):
            prop1_small(complete_graph(8), 5)
        with pytest.raises(InputError):
            prop1_small(complete_graph(5), 3)
        c8 = build_graph(8, [(i, (i + 1) % 8) for i in range(8)])
        with pytest.raises(InputError):
            prop1_small(c8, 3)

    def test_complete_graph_fast_path(self):
        cert = prop1_case("K8", complete_graph(8), 3, ("Prop1.C1", ""))
        assert sorted((len(cert.c1), len(cert.c2))) == [3, 5]

    def test_small_4_normalized_on_n7(self):
        cert = prop1_small(complete_graph(7), 4)
        assert sorted((len(cert.c1), len(cert.c2))) == [3, 4]

    def _sandwich(self, t_edge: bool):
        # triangle joined to an independent majority over a 2-vertex side
        edges = K(range(3)) + cross((3, 4, 5), (6, 7)) + cross(range(3), range(3, 8))
        if t_edge:
            edges.append((6, 7))
        return build_graph(8, edges)

    def test_independent_majority_with_inner_edge(self):
        g = self._sandwich(t_edge=True)
        prop1_case("tedge", g, 3, ("Prop1.C2", "tedge3"))
        prop1_case("pair", g, 4, ("Prop1.C2", "pair4"))

    def test_independent_majority_without_inner_edge(self):
        g = self._sandwich(t_edge=False)
        prop1_case("indep", g, 3, ("Prop1.C2", "independent3"))
        prop1_case("pair", g, 4, ("Prop1.C2", "pair4"))

    def test_cone_with_two_deep_cliques(self):
        edges = K(range(3)) + [(4, 5), (6, 7)] + cross((3,), (4, 5, 6, 7))
        edges += cross(range(3), (4, 5, 6, 7))
        g = build_graph(8, edges)
        prop1_case("qpair", g, 3, ("Prop1.C3", "qpair3"))
        prop1_case("qdeep", g, 4, ("Prop1.C3", "qdeep4"))

    def _ring_with(self, chords):
        ring = [(i, i + 1) for i in range(3, 9)] + [(3, 9)]
        edges = K(range(3)) + ring + chords + cross(range(3), range(3, 10))
        return build_graph(10, edges)

    def test_successor_bypass_on_sparse_ring(self):
        g = self._ring_with([(3, 5), (4, 7), (6, 8), (5, 9)])
        prop1_case("bypass_next", g, 4, ("Prop1.C1", "bypass_next"))

    def test_successor_closing_on_sparse_ring(self):
        g = self._ring_with([(3, 7), (5, 7), (5, 8), (5, 9), (4, 6)])
        prop1_case("close_next", g, 4, ("Prop1.C1", "close_next"))

    def test_shared_anchor_on_sparse_ring(self):
        g = self._ring_with([(3, 7), (5, 8), (4, 6), (6, 9)])
        prop1_case("shared_anchor", g, 4, ("Prop1.C1", "shared_anchor"))

    def test_sparse_attachment_spread(self):
        edges = K(range(3)) + K(range(3, 12))
        edges += [(0, 3), (0, 4), (0, 5), (1, 6), (1, 7), (1, 8), (2, 9), (2, 10), (2, 11)]
        g = build_graph(12, edges)
        prop1_case("sparse_attach", g, 4, ("Prop1.C1", "sparse_attach"))


class TestExchangeSearch:
    def test_partition_shape(self):
        g = complete_graph(10)
        part = improve_partition(g, 5, 5)
        assert isinstance(part, Partition)
        assert part.w1 & part.w2 == 0
        assert part.w1 | part.w2 == g.full_mask
        from twocycles.graphs import inner_edges

        assert part.score == inner_edges(g, part.w1) + inner_edges(g, part.w2)

    # near-threshold graphs where the first partition refuses to close,
    # so the exchange provably fires at least once
    EXCHANGE_GRAPHS = (
        r"LVL\~~wx~`|\t~",
        r"LiuvN|r~n\]{yy",
        r"Ke^}zxm|~N|d",
        "KK~jv~svdjx\\",
        r"LbN~\~[~Vj[z|z",
        r"LDb~Mt|^nu|b^l",
    )

    def test_exchange_steps_gain_two(self):
        from twocycles.graphs import parse_graph6

        fired = 0
        for line in self.EXCHANGE_GRAPHS:
            g = parse_graph6(line)
            trace = SolveTrace()
            part = improve_partition(g, 5, g.n - 5, trace)
            assert part.w1 | part.w2 == g.full_mask
            steps = [s for s in trace.steps if "score_after" in s.info]
            assert steps, line
            for step in steps:
                assert step.info["score_after"] - step.info["score_before"] >= 2
            fired += len(steps)
        assert fired >= 6

    def test_decompose_closes_dense_graphs(self):
        matching = ((0, 1), (2, 3), (4, 5))
        edges = [e for e in K(range(10)) if e not in matching]
        g = build_graph(10, edges)
        out = lemma26_decompose(g, 5, 5)
        assert not isinstance(out, Decomposition)
        assert validate_cert(g, out)

    def test_decompose_rejects_unqualified(self):
        c10 = build_graph(10, [(i, (i + 1) % 10) for i in range(10)])
        with pytest.raises(InputError):
            lemma26_decompose(c10, 5, 5)


PIGEON_EDGES = (
    [(0, 1), (1, 2), (2, 3)]
    + [(i, i + 1) for i in range(4, 8)]
    + [(4, 8)]
    + cross((0,), (4, 5, 6, 7))
    + cross((3,), (4, 5, 6, 8))
)


class TestOpenSideClosure:
    def test_close_route_when_ends_meet(self):
        g = build_graph(9, [(0, 1), (1, 2), (2, 3), (0, 3)] + [(i, i + 1) for i in range(4, 8)] + [(4, 8)])
        trace = SolveTrace()
        res = _prop2(g, mask_of(range(4)), Cycle((4, 5, 6, 7, 8)), trace)
        assert res[0] == "c1"
        assert last_route(trace) == ("Prop2", "close")

    def test_pigeonhole_pair_when_ends_are_light(self):
        g = build_graph(9, PIGEON_EDGES)
        trace = SolveTrace()
        res = _prop2(g, mask_of(range(4)), Cycle((4, 5, 6, 7, 8)), trace)
        assert res[0] == "pair"
        _, x, y, closed = res
        assert {x, y} == {4, 5}
        assert len(closed) == 6
        assert last_route(trace) == ("Prop2", "pigeonhole")

    def test_light_ends_without_enough_edges_violate_contract(self):
        edges = [(0, 1), (1, 2), (2, 3)] + [(i, i + 1) for i in range(4, 8)] + [(4, 8)]
        edges += [(0, 4), (3, 6)]
        g = build_graph(9, edges)
        with pytest.raises(ContractViolation) as err:
            _prop2(g, mask_of(range(4)), Cycle((4, 5, 6, 7, 8)), SolveTrace())
        assert "light endpoints" in str(err.value)


V1_TRI = [0, 1, 2]
SIDE_S = [3, 4, 5]
SIDE_T = [6, 7, 8, 9]
T_PATH = [(6, 7), (7, 8), (8, 9)]


def bipartite_dec(len1=5, len2=5, v1=V1_TRI, s=SIDE_S, t=SIDE_T):
    return Decomposition(
        v1=mask_of(v1),
        v2=mask_of(s + t),
        len1=len1,
        len2=len2,
        case="near_bipartite",
        side_s=mask_of(s),
        side_t=mask_of(t),
    )


def cone_dec(len1, len2, v1, m, a, b):
    return Decomposition(
        v1=mask_of(v1),
        v2=mask_of(m + a + b),
        len1=len1,
        len2=len2,
        case="cone_over_cliques",
        free_m=mask_of(m),
        clique_a=mask_of(a),
        clique_b=mask_of(b),
    )


def endgame(n, edges, dec, want_route):
    g = build_graph(n, edges)
    trace = SolveTrace()
    cert = solve_from_decomposition(g, dec, trace)
    assert validate_cert(g, cert), routes(trace)
    assert want_route in routes(trace), routes(trace)
    return trace


class TestIndependentSideEndgames:
    def test_distinct_slots_insertion(self):
        edges = K(V1_TRI) + T_PATH + cross(SIDE_S, SIDE_T)
        edges += cross(V1_TRI, SIDE_S) + cross(V1_TRI, SIDE_T)
        endgame(10, edges, bipartite_dec(), ("Claim2.1", ""))

    def test_open_side_spans_from_both_ends(self):
        edges = [(0, 1), (1, 2)] + T_PATH + cross(SIDE_S, SIDE_T)
        edges += cross([0, 2], SIDE_S + SIDE_T)
        endgame(10, edges, bipartite_dec(), ("Claim2", "open_both"))

    def test_open_side_spans_skewed(self):
        edges = [(0, 1), (1, 2)] + T_PATH + cross(SIDE_S, SIDE_T)
        edges += cross([0], SIDE_S + SIDE_T) + cross([2], SIDE_T)
        endgame(10, edges, bipartite_dec(), ("Claim2", "open_skew"))

    def test_star_side_uses_attachment_window(self):
        v1 = list(range(5))
        s, t = [5, 6, 7], [8, 9, 10, 11]
        edges = K(v1) + [(8, 9), (8, 10), (8, 11)] + cross(s, t)
        edges += cross(v1, s) + cross(v1, t)
        endgame(12, edges, bipartite_dec(7, 5, v1, s, t), ("Claim2", "window"))

    def test_comb_pattern_leaves_by_outside_edge(self):
        v1 = list(range(5))
        s, t = [5, 6, 7], [8, 9, 10, 11]
        ring = [(i, i + 1) for i in range(4)] + [(0, 4)]
        edges = ring + [(8, 9), (9, 10), (10, 11)] + cross(s, t) + cross(s, [0, 1, 3])
        endgame(12, edges + [(8, 2)], bipartite_dec(7, 5, v1, s, t), ("Claim2.1", "comb_exit"))

    def test_comb_pattern_leaves_by_chord(self):
        v1 = list(range(5))
        s, t = [5, 6, 7], [8, 9, 10, 11]
        ring = [(i, i + 1) for i in range(4)] + [(0, 4)]
        edges = ring + [(8, 9), (9, 10), (10, 11)] + cross(s, t) + cross(s, [0, 1, 3])
        endgame(12, edges + [(2, 4)], bipartite_dec(7, 5, v1, s, t), ("Claim2.1", "comb_chord"))

    def test_sparse_ring_window(self):
        v1 = list(range(5))
        s, t = [5, 6, 7], [8, 9, 10, 11]
        ring = [(i, i + 1) for i in range(4)] + [(0, 4)]
        edges = ring + [(8, 9), (8, 10), (8, 11)] + cross(s, t) + cross(s, [0, 1, 3])
        edges += [(0, 9), (2, 9)]
        endgame(12, edges, bipartite_dec(7, 5, v1, s, t), ("Claim2", "window"))

    def test_heavy_t_vertex_takes_twin_slots(self):
        v1 = list(range(7))
        s, t = [7, 8, 9], [10, 11, 12, 13]
        ring = [(i, (i + 1) % 7) for i in range(7)]
        edges = ring + [(10, 11), (10, 12), (10, 13)] + cross(s, t)
        edges += cross(s, [0, 1, 3, 5]) + [(3, 11), (4, 11), (5, 11)]
        endgame(14, edges, bipartite_dec(9, 5, v1, s, t), ("Claim2", "twin_slots"))


class TestConeEndgames:
    def test_entry_after_transfer(self):
        m, p, q = [3, 4, 5], [6, 7, 8, 9], [10, 11]
        edges = K(V1_TRI) + K(p) + K(q) + cross(m, p + q) + cross(V1_TRI, m + p + q)
        tr = endgame(12, edges, cone_dec(5, 7, V1_TRI, m, p, q), ("Claim3", "entry"))
        assert ("Prop2", "consecutive_transfer") in routes(tr)

    def test_independent_trio_reduces_to_split(self):
        m, p, q = [3, 4, 5], [6, 7, 8], [9]
        edges = K(V1_TRI) + K(p) + cross(m, p + q) + cross(V1_TRI, m + p + q)
        tr = endgame(10, edges, cone_dec(5, 5, V1_TRI, m, p, q), ("Claim3", "reduce_to_split"))
        assert ("Claim2", "window") in routes(tr)

    def test_clique_trio_searched_exhaustively(self):
        m, p, q = [3, 4, 5], [6, 7, 8], [9]
        edges = K(V1_TRI) + K(p) + K(m) + cross(m, p + q) + cross(V1_TRI, m + p + q)
        endgame(10, edges, cone_dec(5, 5, V1_TRI, m, p, q), ("Claim3", "exhaustive_pair"))

    def test_slot_found_directly(self):
        m, p, q = [3, 4, 5], [6, 7, 8], [9, 10]
        edges = K(V1_TRI) + K(p) + [(9, 10)] + cross(m, p + q)
        edges += [(0, 6), (1, 6), (0, 9), (1, 9), (2, 7)]
        endgame(11, edges, cone_dec(5, 6, V1_TRI, m, p, q), ("Claim3", "slot_direct"))

    def test_slot_rebuilt_around_anchored_vertex(self):
        m, p, q = [3, 4, 5], [6, 7, 8], [9, 10, 11]
        edges = K(V1_TRI) + K(p) + K(q) + cross(m, p + q)
        edges += [(0, 6), (1, 6), (2, 6), (1, 9), (2, 11), (1, 5)]
        endgame(12, edges, cone_dec(5, 7, V1_TRI, m, p, q), ("Claim3", "slot_rebuilt"))


class TestHamiltonianSideEndgames:
    def test_light_pair_pulls_two_outside(self):
        edges = [(0, 1), (1, 2), (2, 3), (0, 3)] + K(range(4, 11))
        edges += [(0, 4), (2, 4), (0, 5), (1, 7), (3, 7)]
        dec = Decomposition(
            v1=mask_of(range(4)), v2=mask_of(range(4, 11)), len1=6, len2=5,
            case="all_pairs_hamiltonian",
        )
        endgame(11, edges, dec, ("Claim1.C1", "light_pair"))

    def test_anchor_rebuilt_over_missing_edge(self):
        inner = [e for e in K(range(4, 12)) if e != (4, 7)]
        edges = K(range(4)) + inner + [(0, 4), (1, 4), (1, 7), (0, 9)]
        dec = Decomposition(
            v1=mask_of(range(4)), v2=mask_of(range(4, 12)), len1=6, len2=6,
            case="all_pairs_hamiltonian",
        )
        endgame(12, edges, dec, ("Claim1.C2", "anchor_rebuilt"))

    def test_thread_rebuilt_from_distinct_anchors(self):
        edges = K(range(4)) + K(range(4, 12)) + [(0, 4), (1, 6), (0, 8), (3, 10)]
        dec = Decomposition(
            v1=mask_of(range(4)), v2=mask_of(range(4, 12)), len1=6, len2=6,
            case="all_pairs_hamiltonian",
        )
        endgame(12, edges, dec, ("Claim1.C2", "thread_rebuilt"))


class TestDecompositionValidation:
    def good(self):
        edges = K(V1_TRI) + T_PATH + cross(SIDE_S, SIDE_T)
        edges += cross(V1_TRI, SIDE_S) + cross(V1_TRI, SIDE_T)
        return build_graph(10, edges)

    def test_unknown_case(self):
        dec = bipartite_dec()
        dec.case = "mystery"
        with pytest.raises(InputError):
            solve_from_decomposition(self.good(), dec)

    def test_short_lengths(self):
        dec = bipartite_dec(len1=4, len2=6)
        with pytest.raises(InputError):
            solve_from_decomposition(self.good(), dec)

    def test_overlapping_sides(self):
        dec = bipartite_dec()
        dec.v1 |= 1 << 3
        with pytest.raises(InputError):
            solve_from_decomposition(self.good(), dec)

    def test_size_mismatch(self):
        dec = bipartite_dec(len1=6, len2=5)
        with pytest.raises(InputError):
            solve_from_decomposition(self.good(), dec)

    def test_broken_shape_fails_loudly(self):
        # tag promises a Hamiltonian closed side; give it an empty one
        g = build_graph(11, [(0, 1), (1, 2), (2, 3), (0, 3)])
        dec = Decomposition(
            v1=mask_of(range(4)), v2=mask_of(range(4, 11)), len1=6, len2=5,
            case="all_pairs_hamiltonian",
        )
        with pytest.raises(ContractViolation) as err:
            solve_from_decomposition(g, dec)
        assert "spanning cycle" in str(err.value)
        assert err.value.graph6 is not None


class TestTraces:
    def test_labels_are_vocabulary_checked(self):
        trace = SolveTrace()
        with pytest.raises(InputError):
            trace.add("Lemma99")

    def test_fallback_flag_aggregates(self):
        trace = SolveTrace()
        trace.add("Prop2", (1, 2), route="close")
        assert not trace.used_fallback()
        trace.add("Fallback", (), fallback=True, reason="test")
        assert trace.used_fallback()
        assert trace.labels() == ["Prop2", "Fallback"]
