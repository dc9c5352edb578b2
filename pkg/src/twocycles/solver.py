"""Constructive solver for vertex-disjoint cycle pairs of prescribed lengths.

Under sigma2(G) >= n + 2 a graph on n = n1 + n2 vertices (n1, n2 >= 3)
carries two vertex-disjoint cycles of lengths n1 and n2. The solver builds
them: a triangle-removal bootstrap handles min(n1, n2) in {3, 4}, and a
two-vertex exchange local search plus three terminal case constructions
handles the rest. Every step follows from a degree-sum forcing argument, so
whenever a promised configuration is absent the solver raises
ContractViolation with the offending graph and the trace instead of
searching its way out. A brute-force oracle doubles as the fallback engine
and as the independent referee in tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from twocycles.graphs import (
    ContractViolation,
    Cycle,
    CyclePairCert,
    Graph,
    InputError,
    Path,
    VertexSet,
    bits,
    cross_edges,
    encode_graph6,
    inner_edges,
    is_cycle,
    mask_of,
    sigma2,
    validate_cert,
)
from twocycles.hamilton import (
    absorb_pair,
    close_path_ore,
    find_cycle_of_length,
    find_hamilton_cycle,
    find_hamilton_path,
    find_hamilton_path_between,
)
from twocycles.structure import classify_near_hamiltonian

TRACE_LABELS = frozenset(
    {
        "Prop1.C1",
        "Prop1.C2",
        "Prop1.C3",
        "L2.5",
        "L2.6",
        "Prop2",
        "Prop3",
        "Claim1.C1",
        "Claim1.C2",
        "Claim2",
        "Claim2.1",
        "Claim3",
        "Fallback",
    }
)

STRATEGIES = ("proof_first", "proof_only", "oracle_only")


@dataclass
class TraceStep:
    label: str
    vertices: tuple[int, ...] = ()
    fallback: bool = False
    info: dict = field(default_factory=dict)


@dataclass
class SolveTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def add(self, label: str, vertices=(), fallback: bool = False, **info) -> None:
        if label not in TRACE_LABELS:
            raise InputError(f"unknown trace label {label!r}")
        self.steps.append(TraceStep(label, tuple(vertices), fallback, info))

    def labels(self) -> list[str]:
        return [s.label for s in self.steps]

    def used_fallback(self) -> bool:
        return any(s.fallback for s in self.steps)


@dataclass
class Partition:
    """Two-sided vertex split with the inner edge count as its score."""

    w1: VertexSet
    w2: VertexSet
    score: int


@dataclass
class Decomposition:
    """Terminal state of the exchange search.

    v1 has len1 - 2 vertices, v2 has len2 + 2 and sigma2(G[v2]) >= len2 + 3.
    (len1, len2) equal the requested lengths, possibly swapped when the
    second side went non-Hamiltonian first. The case tag drives the endgame:
    every pair removal leaves G[v2] Hamiltonian, or G[v2] splits off an
    independent side complete to the rest, or three vertices cover all of
    two cliques.
    """

    v1: VertexSet
    v2: VertexSet
    len1: int
    len2: int
    case: str
    side_s: VertexSet = 0
    side_t: VertexSet = 0
    free_m: VertexSet = 0
    clique_a: VertexSet = 0
    clique_b: VertexSet = 0


def _fail(g: Graph, trace: SolveTrace | None, msg: str):
    raise ContractViolation(msg, graph6=encode_graph6(g), trace=trace)


def _sigma2_qualified(g: Graph) -> bool:
    s = sigma2(g)
    return s is None or s >= g.n + 2


# === brute-force oracle ===


def _cycles_of_length(g: Graph, k: int, within: VertexSet) -> Iterator[Cycle]:
    if k < 3 or k > within.bit_count():
        return
    adj = g.adj
    for anchor in bits(within):
        allowed = within & ~((1 << anchor) - 1)
        if allowed.bit_count() < k:
            continue
        path = [anchor]

        def extend(last: int, used: int) -> Iterator[Cycle]:
            if len(path) == k:
                if adj[last] >> anchor & 1 and path[1] < path[-1]:
                    yield Cycle(tuple(path))
                return
            for w in bits(adj[last] & allowed & ~used):
                path.append(w)
                yield from extend(w, used | 1 << w)
                path.pop()

        yield from extend(anchor, 1 << anchor)


def brute_force_oracle(g: Graph, n1: int, n2: int) -> CyclePairCert | None:
    """Exhaustive search for a vertex-disjoint (n1, n2) cycle pair.

    Independent of the constructive pipeline: enumerate n1-cycles in
    anchored order, then look for an n2-cycle in what remains.
    """
    if n1 < 3 or n2 < 3:
        raise InputError("cycle lengths must be at least 3")
    if n1 + n2 > g.n:
        raise InputError("cycle lengths exceed the vertex count")
    full = g.full_mask
    for c1 in _cycles_of_length(g, n1, full):
        c2 = find_cycle_of_length(g, n2, within=full & ~c1.mask)
        if c2 is not None:
            return CyclePairCert(n1, n2, c1, c2)
    return None


# === shared helpers ===


def _first_triangle(g: Graph) -> tuple[int, int, int] | None:
    for i in range(g.n):
        row = g.adj[i] & ~((1 << (i + 1)) - 1)
        for j in bits(row):
            common = g.adj[i] & g.adj[j] & ~((1 << (j + 1)) - 1)
            if common:
                return i, j, (common & -common).bit_length() - 1
    return None


def _min_nonadj_pair(g: Graph, vs: VertexSet) -> tuple[int, int, int] | None:
    """Lex-first nonadjacent pair attaining the minimum induced degree sum."""
    vlist = list(bits(vs))
    deg = {v: (g.adj[v] & vs).bit_count() for v in vlist}
    best: tuple[int, int, int] | None = None
    for a in range(len(vlist)):
        u = vlist[a]
        for b in range(a + 1, len(vlist)):
            v = vlist[b]
            if g.adj[u] >> v & 1:
                continue
            s = deg[u] + deg[v]
            if best is None or s < best[2]:
                best = (u, v, s)
    return best


def _common_nbrs(g: Graph, a: int, b: int, pool: VertexSet) -> list[int]:
    return list(bits(g.adj[a] & g.adj[b] & pool))


def _cycle_from(seq: list[int], g: Graph, trace: SolveTrace | None) -> Cycle:
    if not is_cycle(g, seq):
        _fail(g, trace, f"constructed sequence is not a cycle: {seq}")
    return Cycle(tuple(seq))


# === small cycle bootstrap: pairs (3, n-3) and (4, n-4) ===


def prop1_small(g: Graph, small: int, trace: SolveTrace | None = None) -> CyclePairCert:
    """Cycle pair (small, n - small) for small in {3, 4} under the main bound.

    Removes the lex-first triangle and reads the remainder through the
    near-Hamilton trichotomy; each of the three shapes yields both the
    triangle-sized and the 4-sized split constructively. A request whose
    complementary side is the smaller one is normalized first, so small=4 on
    n=7 is served through the 3-cycle branch.
    """
    if trace is None:
        trace = SolveTrace()
    n = g.n
    if small not in (3, 4):
        raise InputError("small side must be 3 or 4")
    if n - small < 3:
        raise InputError(f"no room for a {n - small}-cycle beside a {small}-cycle")
    if not _sigma2_qualified(g):
        raise InputError(f"needs sigma2 >= {n + 2}")
    if n - small < small:
        small = n - small
    tri = _first_triangle(g)
    if tri is None:
        _fail(g, trace, "degree bound promises a triangle, none found")
    u, v, w = tri
    cmask = mask_of(tri)
    rest = g.full_mask & ~cmask
    shape = classify_near_hamiltonian(g, within=rest)
    if shape.kind == "hamilton_cycle":
        return _prop1_case1(g, small, tri, shape.cycle, trace)
    if shape.kind == "near_bipartite":
        return _prop1_case2(g, small, tri, shape, trace)
    return _prop1_case3(g, small, tri, shape, trace)


def _splice_out(cyc: Cycle, z: int) -> list[int]:
    seq = list(cyc.vertices)
    i = seq.index(z)
    return seq[i + 1:] + seq[:i]


def _prop1_case1(
    g: Graph, small: int, tri: tuple[int, int, int], cprime: Cycle, trace: SolveTrace
) -> CyclePairCert:
    n = g.n
    trace.add("Prop1.C1", tri)
    if small == 3:
        return CyclePairCert(3, n - 3, Cycle(tri), cprime)

    gmask = cprime.mask
    cset = [t for t in tri]
    pair = _min_nonadj_pair(g, gmask)
    if pair is not None and pair[2] <= n - 2:
        x0, y0, _ = pair
        if cross_edges(g, mask_of((x0, y0)), mask_of(cset)) < 4:
            _fail(g, trace, "low-degree pair must send 4 edges to the triangle")
        yv = x0 if (g.adj[x0] & mask_of(cset)).bit_count() >= 2 else y0
        cn = [c for c in cset if g.has_edge(yv, c)]
        if len(cn) < 2:
            _fail(g, trace, "chosen vertex lost its two triangle neighbors")
        ym, yp = cprime.predecessor(yv), cprime.successor(yv)
        if g.has_edge(ym, yp):
            u1, v1 = cn[0], cn[1]
            w1 = next(c for c in cset if c not in (u1, v1))
            four = [u1, yv, v1, w1]
            rest_cycle = _splice_out(cprime, yv)
            trace.add("Prop1.C1", (yv,), route="bypass")
            return CyclePairCert(4, n - 4, _cycle_from(four, g, trace), _cycle_from(rest_cycle, g, trace))
        dsum = g.degree(ym, within=gmask) + g.degree(yp, within=gmask)
        if dsum >= n - 2:
            u1, v1 = cn[0], cn[1]
            w1 = next(c for c in cset if c not in (u1, v1))
            four = [u1, yv, v1, w1]
            arc = cprime.arc(yp, ym)
            closed = close_path_ore(g, Path(tuple(arc)))
            trace.add("Prop1.C1", (yv,), route="close")
            return CyclePairCert(4, n - 4, _cycle_from(four, g, trace), closed)
        # at most one of the six edges from the cycle neighbors to the
        # triangle is missing; point the orientation at the full endpoint
        orient = cprime
        if any(not g.has_edge(orient.successor(yv), c) for c in cset):
            orient = cprime.reversed()
        yp = orient.successor(yv)
        ym = orient.predecessor(yv)
        if any(not g.has_edge(yp, c) for c in cset):
            _fail(g, trace, "both cycle neighbors miss triangle edges")
        ypp = orient.successor(yp)
        c1, c2, c3 = cset
        if g.has_edge(yv, ypp):
            four = [c1, yp, c2, c3]
            rest_cycle = _splice_out(orient, yp)
            trace.add("Prop1.C1", (yp,), route="bypass_next")
            return CyclePairCert(4, n - 4, _cycle_from(four, g, trace), _cycle_from(rest_cycle, g, trace))
        dsum = g.degree(yv, within=gmask) + g.degree(ypp, within=gmask)
        if dsum >= n - 2:
            four = [c1, yp, c2, c3]
            arc = orient.arc(ypp, yv)
            closed = close_path_ore(g, Path(tuple(arc)))
            trace.add("Prop1.C1", (yp,), route="close_next")
            return CyclePairCert(4, n - 4, _cycle_from(four, g, trace), closed)
        zc = [c for c in cset if g.has_edge(ym, c) and g.has_edge(ypp, c)]
        if not zc:
            _fail(g, trace, "no shared triangle neighbor for the flanking pair")
        z = zc[0]
        an = [c for c in cset if c != z and g.has_edge(yv, c)]
        if not an:
            _fail(g, trace, "no triangle anchor adjacent to the low vertex")
        a = an[0]
        b = next(c for c in cset if c not in (z, a))
        four = [a, yv, yp, b]
        back = orient.arc_back(ym, ypp)
        rest_cycle = [z] + back
        trace.add("Prop1.C1", (yv, yp, z), route="shared_anchor")
        return CyclePairCert(4, n - 4, _cycle_from(four, g, trace), _cycle_from(rest_cycle, g, trace))

    # every nonadjacent pair in the remainder sums to n - 1 or more
    zs = [z for z in bits(gmask) if (g.adj[z] & mask_of(cset)).bit_count() >= 2]
    if zs:
        z = zs[0]
        cn = [c for c in cset if g.has_edge(z, c)]
        u1, v1 = cn[0], cn[1]
        w1 = next(c for c in cset if c not in (u1, v1))
        four = [u1, w1, v1, z]
        zm, zp = cprime.predecessor(z), cprime.successor(z)
        if g.has_edge(zm, zp):
            rest_cycle = _splice_out(cprime, z)
            trace.add("Prop1.C1", (z,), route="dense_bypass")
            return CyclePairCert(4, n - 4, _cycle_from(four, g, trace), _cycle_from(rest_cycle, g, trace))
        arc = cprime.arc(zp, zm)
        closed = close_path_ore(g, Path(tuple(arc)))
        trace.add("Prop1.C1", (z,), route="dense_close")
        return CyclePairCert(4, n - 4, _cycle_from(four, g, trace), closed)

    u, v, w = tri
    xs = [x for x in bits(gmask) if g.has_edge(u, x)]
    if not xs:
        _fail(g, trace, "triangle vertex with no outside neighbor")
    x = xs[0]
    ys = _common_nbrs(g, x, v, gmask & ~(1 << x))
    if not ys:
        _fail(g, trace, "no shared neighbor linking the triangle pair outward")
    y = ys[0]
    wpool = g.adj[w] & gmask & ~(1 << x) & ~(1 << y)
    wn = list(bits(wpool))
    if len(wn) < 2:
        _fail(g, trace, "third triangle vertex lacks two outside neighbors")
    x2, y2 = wn[0], wn[1]
    inner = gmask & ~(1 << x) & ~(1 << y)
    pmid = find_hamilton_path_between(g, x2, y2, within=inner)
    if pmid is None:
        _fail(g, trace, "remainder minus the linking pair has no spanning path")
    four = [v, u, x, y]
    rest_cycle = [w] + list(pmid.vertices)
    trace.add("Prop1.C1", (x, y), route="sparse_attach")
    return CyclePairCert(4, n - 4, _cycle_from(four, g, trace), _cycle_from(rest_cycle, g, trace))


def _prop1_case2(g: Graph, small, tri, shape, trace: SolveTrace) -> CyclePairCert:
    n = g.n
    trace.add("Prop1.C2", tri)
    u, v, w = tri
    cmask = mask_of(tri)
    slist = list(bits(shape.side_s))
    tlist = list(bits(shape.side_t))
    m = len(tlist)
    for s in slist:
        if g.adj[s] & cmask != cmask:
            _fail(g, trace, "independent-side vertex not complete to the triangle")

    if small == 4:
        s = slist[0]
        four = [u, v, s, w]
        srest = [x for x in slist if x != s]
        seq = []
        for i in range(m):
            seq.append(srest[i])
            seq.append(tlist[i])
        trace.add("Prop1.C2", (s,), route="pair4")
        return CyclePairCert(4, n - 4, _cycle_from(four, g, trace), _cycle_from(seq, g, trace))

    tedge = None
    for i in range(m):
        for j in range(i + 1, m):
            if g.has_edge(tlist[i], tlist[j]):
                tedge = (tlist[i], tlist[j])
                break
        if tedge:
            break
    s = slist[0]
    srest = [x for x in slist if x != s]
    if tedge is not None:
        t1, t2 = tedge
        trest = [t for t in tlist if t not in tedge]
        seq = [srest[0], t1, t2]
        for i, t in enumerate(trest):
            seq.append(srest[1 + i])
            seq.append(t)
        seq.append(srest[m - 1])
        seq.append(w)
        tri_cycle = [u, v, s]
        trace.add("Prop1.C2", tedge, route="tedge3")
        return CyclePairCert(3, n - 3, _cycle_from(tri_cycle, g, trace), _cycle_from(seq, g, trace))
    tc = None
    for t in tlist:
        for c in (u, v, w):
            if g.has_edge(t, c):
                tc = (t, c)
                break
        if tc:
            break
    if tc is None:
        _fail(g, trace, "no edge from the clique side to the triangle")
    t1, c = tc
    a, b = (x for x in tri if x != c)
    torder = [t1] + [t for t in tlist if t != t1]
    seq = [c]
    for i in range(m):
        seq.append(torder[i])
        seq.append(srest[i])
    tri_cycle = [a, b, s]
    trace.add("Prop1.C2", tc, route="independent3")
    return CyclePairCert(3, n - 3, _cycle_from(tri_cycle, g, trace), _cycle_from(seq, g, trace))


def _prop1_case3(g: Graph, small, tri, shape, trace: SolveTrace) -> CyclePairCert:
    n = g.n
    trace.add("Prop1.C3", tri)
    u, v, w = tri
    cmask = mask_of(tri)
    h = shape.cut_vertex
    plist = list(bits(shape.clique_a))
    qlist = list(bits(shape.clique_b))
    p, q = len(plist), len(qlist)
    for x in plist + qlist:
        if g.adj[x] & cmask != cmask:
            _fail(g, trace, "clique vertex not complete to the triangle")

    if small == 3:
        if n == 6:
            hc = [c for c in tri if g.has_edge(h, c)]
            if not hc:
                _fail(g, trace, "cut vertex with no triangle neighbor on six vertices")
            ch = hc[0]
            a, b = (c for c in tri if c != ch)
            t1 = [ch, plist[0], h]
            t2 = [a, b, qlist[0]]
            trace.add("Prop1.C3", (h, ch), route="six")
            return CyclePairCert(3, 3, _cycle_from(t1, g, trace), _cycle_from(t2, g, trace))
        if p >= 3:
            tri_cycle = [u, plist[0], plist[1]]
            seq = [v] + plist[2:] + [h] + qlist + [w]
            trace.add("Prop1.C3", (h,), route="bigP3")
            return CyclePairCert(3, n - 3, _cycle_from(tri_cycle, g, trace), _cycle_from(seq, g, trace))
        if q >= 2:
            tri_cycle = [u, qlist[0], qlist[1]]
            seq = [v, plist[0], h, plist[1], w]
            trace.add("Prop1.C3", (h,), route="qpair3")
            return CyclePairCert(3, n - 3, _cycle_from(tri_cycle, g, trace), _cycle_from(seq, g, trace))
        hc = [c for c in tri if g.has_edge(h, c)]
        if not hc:
            _fail(g, trace, "cut vertex with no triangle neighbor on seven vertices")
        ch = hc[0]
        rest = [c for c in tri if c != ch]
        tri_cycle = [rest[0], plist[0], plist[1]]
        seq = [ch, h, qlist[0], rest[1]]
        trace.add("Prop1.C3", (h, ch), route="seven")
        return CyclePairCert(3, n - 3, _cycle_from(tri_cycle, g, trace), _cycle_from(seq, g, trace))

    if q >= 2:
        four = [u, plist[0], v, qlist[0]]
        seq = [w] + plist[1:] + [h] + qlist[1:]
        trace.add("Prop1.C3", (h,), route="qdeep4")
        return CyclePairCert(4, n - 4, _cycle_from(four, g, trace), _cycle_from(seq, g, trace))
    four = [u, plist[0], v, plist[1]]
    seq = [w] + plist[2:] + [h] + qlist
    trace.add("Prop1.C3", (h,), route="qone4")
    return CyclePairCert(4, n - 4, _cycle_from(four, g, trace), _cycle_from(seq, g, trace))


# === exchange local search ===


def _exchange_loop(g: Graph, n1: int, n2: int, trace: SolveTrace):
    """Run the two-vertex exchange until both sides close or one side hits
    the terminal degree bound. Returns ("cycles", c1, c2, partition) or
    ("terminal", decomposition, partition)."""
    if n1 + n2 != g.n:
        raise InputError("side lengths must sum to the vertex count")
    if n1 < 3 or n2 < 3:
        raise InputError("side lengths must be at least 3")
    if not _sigma2_qualified(g):
        raise InputError(f"needs sigma2 >= {g.n + 2}")
    ham = find_hamilton_cycle(g)
    if ham is None:
        _fail(g, trace, "qualified graph without a spanning cycle")
    seq = ham.vertices
    w1 = mask_of(seq[:n1])
    w2 = mask_of(seq[n1:])

    for _ in range(g.edge_count() // 2 + 2):
        score = inner_edges(g, w1) + inner_edges(g, w2)
        c1 = find_hamilton_cycle(g, within=w1)
        c2 = find_hamilton_cycle(g, within=w2)
        if c1 is not None and c2 is not None:
            return "cycles", c1, c2, Partition(w1, w2, score)
        if c1 is None:
            side, other, m_side, m_other, first = w1, w2, n1, n2, True
        else:
            side, other, m_side, m_other, first = w2, w1, n2, n1, False
        hp = find_hamilton_path(g, within=side)
        if hp is None:
            _fail(g, trace, "side lost its spanning path")
        s, t = hp.ends
        stbits = (1 << s) | (1 << t)
        v1 = side ^ stbits
        v2 = other | stbits
        if cross_edges(g, stbits, other) < m_other + 3:
            _fail(g, trace, "open side endpoints short on cross edges")
        s2v2 = sigma2(g, within=v2)
        if s2v2 is None or s2v2 >= m_other + 3:
            dec = Decomposition(v1, v2, m_side, m_other, case="pending")
            return "terminal", dec, Partition(w1, w2, score)

        # find the exchange pair inside the enlarged side
        label = "L2.6"
        found = None
        other_path = find_hamilton_path(g, within=other)
        if other_path is None:
            _fail(g, trace, "closed side lost its spanning path")
        v2path = absorb_pair(g, other_path, s, t)
        if find_hamilton_cycle(g, within=v2) is None:
            x, y = v2path.ends
            mid = Path(v2path.vertices[1:-1])
            dx = g.degree(x, within=v2) + g.degree(y, within=v2)
            if dx > m_other + 2:
                _fail(g, trace, "open enlarged side endpoints over the degree cap")
            found = (x, y, mid)
        else:
            pair = _min_nonadj_pair(g, v2)
            if pair is None or pair[2] > m_other + 2:
                _fail(g, trace, "terminal test missed the low pair")
            x, y = pair[0], pair[1]
            mid = find_hamilton_path(g, within=v2 & ~(1 << x) & ~(1 << y))
            if mid is not None:
                found = (x, y, mid)
            else:
                label = "L2.5"
                vlist = list(bits(v2))
                deg = {z: g.degree(z, within=v2) for z in vlist}
                for ai in range(len(vlist)):
                    for bi in range(ai + 1, len(vlist)):
                        x, y = vlist[ai], vlist[bi]
                        if g.has_edge(x, y):
                            continue
                        if deg[x] + deg[y] > m_other + 2:
                            continue
                        if cross_edges(g, (1 << x) | (1 << y), v1) < m_side:
                            continue
                        mid = find_hamilton_path(g, within=v2 & ~(1 << x) & ~(1 << y))
                        if mid is not None:
                            found = (x, y, mid)
                            break
                    if found:
                        break
        if found is None:
            _fail(g, trace, "no admissible exchange pair")
        x, y, mid = found
        xybits = (1 << x) | (1 << y)
        if cross_edges(g, xybits, v1) < m_side:
            _fail(g, trace, "exchange pair short on edges into the open side")
        side_path = Path(hp.vertices[1:-1])
        absorb_pair(g, side_path, x, y)
        new_w_side = v1 | xybits
        new_w_other = v2 & ~xybits
        new_score = inner_edges(g, new_w_side) + inner_edges(g, new_w_other)
        if new_score - score < 2:
            _fail(g, trace, f"exchange gained {new_score - score}, needs 2")
        trace.add(
            label,
            (s, t, x, y),
            score_before=score,
            score_after=new_score,
        )
        if first:
            w1, w2 = new_w_side, new_w_other
        else:
            w2, w1 = new_w_side, new_w_other
    _fail(g, trace, "exchange search exceeded its step budget")


def improve_partition(g: Graph, n1: int, n2: int, trace: SolveTrace | None = None) -> Partition:
    """Exchange local search alone: returns the final partition, whether the
    sides closed into cycles or a side reached the terminal degree bound."""
    if trace is None:
        trace = SolveTrace()
    outcome = _exchange_loop(g, n1, n2, trace)
    return outcome[3] if outcome[0] == "cycles" else outcome[2]


def lemma26_decompose(
    g: Graph, n1: int, n2: int, trace: SolveTrace | None = None
) -> CyclePairCert | Decomposition:
    """Exchange search followed by the terminal case analysis.

    Either both sides close, giving the certificate outright, or the open
    side's enlargement satisfies sigma2 >= len2 + 3 and is tagged with which
    of the three endgame shapes applies.
    """
    if trace is None:
        trace = SolveTrace()
    outcome = _exchange_loop(g, n1, n2, trace)
    if outcome[0] == "cycles":
        _, c1, c2, _ = outcome
        cert = CyclePairCert(n1, n2, c1, c2)
        if len(c1) != n1:
            cert = CyclePairCert(n1, n2, c2, c1)
        trace.add("L2.6", (), outcome="cycles")
        return cert
    dec = outcome[1]
    v2 = dec.v2
    vlist = list(bits(v2))
    failing = None
    for ai in range(len(vlist)):
        for bi in range(ai + 1, len(vlist)):
            x, y = vlist[ai], vlist[bi]
            if find_hamilton_cycle(g, within=v2 & ~(1 << x) & ~(1 << y)) is None:
                failing = (x, y)
                break
        if failing:
            break
    if failing is None:
        dec.case = "all_pairs_hamiltonian"
        trace.add("L2.6", (), outcome="case_i", lengths=(dec.len1, dec.len2))
        return dec
    x0, y0 = failing
    hmask = v2 & ~(1 << x0) & ~(1 << y0)
    shape = classify_near_hamiltonian(g, within=hmask)
    if shape.kind == "hamilton_cycle":
        _fail(g, trace, "pair flagged non-Hamiltonian yet classified Hamiltonian")
    pairbits = (1 << x0) | (1 << y0)
    if shape.kind == "near_bipartite":
        smask = shape.side_s
        for s in bits(smask):
            if g.adj[s] & pairbits != pairbits:
                _fail(g, trace, "independent side not complete to the removed pair")
        dec.case = "near_bipartite"
        dec.side_s = smask
        dec.side_t = v2 & ~smask
        trace.add("L2.6", (x0, y0), outcome="case_ii", lengths=(dec.len1, dec.len2))
        return dec
    m3 = pairbits | (1 << shape.cut_vertex)
    rest = shape.clique_a | shape.clique_b
    for z in bits(m3):
        if g.adj[z] & rest != rest:
            _fail(g, trace, "cover trio not complete to the cliques")
    dec.case = "cone_over_cliques"
    dec.free_m = m3
    dec.clique_a = shape.clique_a
    dec.clique_b = shape.clique_b
    trace.add("L2.6", (x0, y0), outcome="case_iii", lengths=(dec.len1, dec.len2))
    return dec

# === endgame constructions on a terminal decomposition ===


def _pair_ham(g: Graph, v2: VertexSet, x: int, y: int, trace: SolveTrace) -> Cycle:
    rest = find_hamilton_cycle(g, within=v2 & ~(1 << x) & ~(1 << y))
    if rest is None:
        _fail(g, trace, f"pair removal ({x}, {y}) broke the promised spanning cycle")
    return rest


def _entry_scan(g: Graph, v1: VertexSet, c2: Cycle, trace: SolveTrace):
    """First consecutive pair of c2 whose transfer closes the open side."""
    for x in c2.vertices:
        y = c2.successor(x)
        gc = find_hamilton_cycle(g, within=v1 | (1 << x) | (1 << y))
        if gc is not None:
            trace.add("Prop2", (x, y), route="consecutive_transfer")
            return gc, x, y
    return None


def _prop2(g: Graph, v1: VertexSet, c2: Cycle, trace: SolveTrace):
    """Close the open side into a cycle on its own vertices, or hand back a
    consecutive pair of c2 that completes it instead."""
    hp = find_hamilton_path(g, within=v1)
    if hp is None:
        _fail(g, trace, "open side lost its spanning path")
    u, v = hp.ends
    k = len(hp)
    if g.has_edge(u, v) or g.degree(u, within=v1) + g.degree(v, within=v1) >= k:
        c1 = close_path_ore(g, hp)
        trace.add("Prop2", (u, v), route="close")
        return "c1", c1
    uvbits = (1 << u) | (1 << v)
    if cross_edges(g, uvbits, c2.mask) < len(c2) + 3:
        _fail(g, trace, "light endpoints short on edges into the closed side")
    for x in c2.vertices:
        y = c2.successor(x)
        if cross_edges(g, uvbits, (1 << x) | (1 << y)) < 3:
            continue
        if g.has_edge(v, x) and g.has_edge(u, y):
            seq = list(hp.vertices) + [x, y]
        elif g.has_edge(v, y) and g.has_edge(u, x):
            seq = list(hp.vertices) + [y, x]
        else:
            continue
        trace.add("Prop2", (x, y), route="pigeonhole")
        return "pair", x, y, _cycle_from(seq, g, trace)
    _fail(g, trace, "no heavy consecutive pair despite the edge count")


def _claim1(g: Graph, dec: Decomposition, trace: SolveTrace) -> tuple[Cycle, Cycle]:
    v1, v2 = dec.v1, dec.v2
    n1, n2 = dec.len1, dec.len2
    c2 = find_hamilton_cycle(g, within=v2)
    if c2 is None:
        _fail(g, trace, "closed side lost its spanning cycle")
    hit = _entry_scan(g, v1, c2, trace)
    if hit is not None:
        gc, x, y = hit
        trace.add("Claim1.C1", (x, y), route="entry")
        return gc, _pair_ham(g, v2, x, y, trace)
    res = _prop2(g, v1, c2, trace)
    if res[0] == "pair":
        _, x, y, gc = res
        trace.add("Claim1.C1", (x, y), route="prop2_pair")
        return gc, _pair_ham(g, v2, x, y, trace)
    c1 = res[1]
    s2 = sigma2(g, within=v1)
    if s2 is not None and s2 <= n1 - 1:
        return _claim1_sparse(g, dec, c1, c2, trace)
    return _claim1_dense(g, dec, c1, c2, trace)


def _claim1_sparse(g, dec, c1: Cycle, c2: Cycle, trace) -> tuple[Cycle, Cycle]:
    """A light nonadjacent pair inside the open side pulls one outside vertex
    in and pushes a shared neighbor of the predecessors alongside."""
    v1, v2 = dec.v1, dec.v2
    pair = _min_nonadj_pair(g, v1)
    u, v = pair[0], pair[1]
    uvbits = (1 << u) | (1 << v)
    x = None
    for xc in c2.vertices:
        y = c2.successor(xc)
        if cross_edges(g, uvbits, (1 << xc) | (1 << y)) < 3:
            continue
        if g.has_edge(xc, u) and g.has_edge(xc, v):
            x = xc
            break
        if g.has_edge(y, u) and g.has_edge(y, v):
            x = y
            break
    if x is None:
        _fail(g, trace, "no outside vertex adjacent to both of the light pair")
    um, vm = c1.predecessor(u), c1.predecessor(v)
    xs = _common_nbrs(g, um, vm, v2 & ~(1 << x))
    if not xs:
        _fail(g, trace, "predecessors share no second outside neighbor")
    x2 = xs[0]
    trace.add("Prop3", (um, vm), picked=x2)
    seq = c1.arc_back(um, v) + [x] + c1.arc(u, vm) + [x2]
    trace.add("Claim1.C1", (u, v, x, x2), route="light_pair")
    return _cycle_from(seq, g, trace), _pair_ham(g, v2, x, x2, trace)


def _claim1_dense(g, dec, c1: Cycle, c2: Cycle, trace) -> tuple[Cycle, Cycle]:
    v1, v2 = dec.v1, dec.v2
    xt = None
    for z in bits(v2):
        if (g.adj[z] & v1).bit_count() >= 2:
            xt = z
            break
    if xt is not None:
        # branch A: an outside vertex with two inside neighbors
        u = next(bits(g.adj[xt] & v1))
        up = c1.successor(u)
        xp = c2.successor(xt)
        ys = _common_nbrs(g, up, xp, v2 & ~(1 << xt) & ~(1 << xp))
        if not ys:
            _fail(g, trace, "successor pair shares no outside neighbor")
        y = ys[0]
        trace.add("Prop3", (up, xp), picked=y)
        gc = find_hamilton_cycle(g, within=v1 | (1 << xt) | (1 << y))
        if gc is not None:
            trace.add("Claim1.C2", (xt, y), route="anchor_direct")
            return gc, _pair_ham(g, v2, xt, y, trace)
        zs = _common_nbrs(g, u, y, v2 & ~(1 << xt) & ~(1 << y))
        if not zs:
            _fail(g, trace, "anchor and its partner share no outside neighbor")
        z = zs[0]
        trace.add("Prop3", (u, y), picked=z)
        seq = [y] + c1.arc(up, u) + [z]
        trace.add("Claim1.C2", (xt, y, z), route="anchor_rebuilt")
        return _cycle_from(seq, g, trace), _pair_ham(g, v2, y, z, trace)

    # branch B: every outside vertex sees the open side at most once
    u0 = x0 = None
    for a in bits(v1):
        row = g.adj[a] & v2
        if row:
            u0 = a
            x0 = next(bits(row))
            break
    if u0 is None:
        _fail(g, trace, "no edge between the sides")
    xp = c2.successor(x0)
    up, um = c1.successor(u0), c1.predecessor(u0)
    side_pool = v2 & ~(1 << x0) & ~(1 << xp)
    a1 = _common_nbrs(g, up, xp, side_pool)
    if not a1:
        _fail(g, trace, "successor pair shares no outside neighbor")
    w = a1[0]
    trace.add("Prop3", (up, xp), picked=w)
    gc = find_hamilton_cycle(g, within=v1 | (1 << w) | (1 << xp))
    if gc is not None:
        trace.add("Claim1.C2", (w, xp), route="thread_direct")
        return gc, _pair_ham(g, v2, w, xp, trace)
    a2 = _common_nbrs(g, u0, xp, v2 & ~(1 << w) & ~(1 << xp))
    a3 = _common_nbrs(g, um, xp, side_pool)
    y2c = [z for z in a2 if z != x0]
    if not y2c:
        _fail(g, trace, "no free shared neighbor for the anchor pair")
    y2 = y2c[0]
    y1c = [z for z in a1 if z != y2]
    if not y1c:
        _fail(g, trace, "no free shared neighbor for the successor pair")
    y1 = y1c[0]
    y3c = [z for z in a3 if z not in (y1, y2)]
    if not y3c:
        _fail(g, trace, "no free shared neighbor for the predecessor pair")
    y3 = y3c[0]
    trace.add("Prop3", (u0, xp), picked=y2)
    trace.add("Prop3", (um, xp), picked=y3)
    seq1 = c1.arc(up, um) + [y3, xp, y1]
    cyc1 = _cycle_from(seq1, g, trace)
    inner_pool = v2 & ~(1 << y1) & ~(1 << xp) & ~(1 << y3)
    pstar = find_hamilton_path_between(g, x0, y2, within=inner_pool)
    if pstar is None:
        _fail(g, trace, "outside remainder lost its connecting path")
    seq2 = [u0] + list(pstar.vertices)
    trace.add("Claim1.C2", (u0, x0, y1, y2, y3), route="thread_rebuilt")
    return cyc1, _cycle_from(seq2, g, trace)


# === split-side constructions ===


def _t_edge_without(g: Graph, tmask: VertexSet, t: int) -> bool:
    rem = tmask & ~(1 << t)
    return any(g.adj[a] & rem & ~((1 << (a + 1)) - 1) for a in bits(rem))


def _t_runs(g: Graph, tset: list[int]) -> list[list[int]] | None:
    """Lex-first adjacent pair as one run of two, the rest as singletons."""
    for i in range(len(tset)):
        for j in range(i + 1, len(tset)):
            if g.has_edge(tset[i], tset[j]):
                pair = (tset[i], tset[j])
                rest = [t for t in tset if t not in pair]
                return [[pair[0], pair[1]]] + [[t] for t in rest]
    return None


def _alt_cycle(g: Graph, s_side: list[int], runs: list[list[int]], trace) -> Cycle:
    if len(s_side) != len(runs):
        _fail(g, trace, "alternation mismatch between separators and runs")
    seq: list[int] = []
    for s, run in zip(s_side, runs):
        seq.append(s)
        seq.extend(run)
    return _cycle_from(seq, g, trace)


def _consec_positions(g: Graph, c1: Cycle, s: int) -> list[int]:
    seq = c1.vertices
    k = len(seq)
    return [
        i
        for i in range(k)
        if g.has_edge(s, seq[i]) and g.has_edge(s, seq[(i + 1) % k])
    ]


def _find_p4(g: Graph, tmask: VertexSet) -> list[int] | None:
    for a in bits(tmask):
        for b in bits(g.adj[a] & tmask):
            for c in bits(g.adj[b] & tmask & ~(1 << a)):
                for d in bits(g.adj[c] & tmask & ~(1 << a) & ~(1 << b)):
                    if a < d:
                        return [a, b, c, d]
    return None


def _claim2(g: Graph, dec: Decomposition, trace: SolveTrace) -> tuple[Cycle, Cycle]:
    hp = find_hamilton_path(g, within=dec.v1)
    if hp is None:
        _fail(g, trace, "open side lost its spanning path")
    u, v = hp.ends
    light = (not g.has_edge(u, v)) and (
        g.degree(u, within=dec.v1) + g.degree(v, within=dec.v1) <= dec.len1 - 3
    )
    if light:
        return _claim2_open(g, dec, hp, trace)
    c1 = close_path_ore(g, hp)
    return _claim2_closed(g, dec, c1, trace)


def _claim2_open(g, dec, hp: Path, trace) -> tuple[Cycle, Cycle]:
    """Spanning path of the open side with light, nonadjacent endpoints: wire
    it straight into the split side."""
    v2, n2 = dec.v2, dec.len2
    smask, tmask = dec.side_s, dec.side_t
    m = smask.bit_count() - 1
    u, v = hp.ends
    if cross_edges(g, (1 << u) | (1 << v), v2) < n2 + 5:
        _fail(g, trace, "light endpoints short on edges into the split side")
    if (g.adj[u] & v2).bit_count() < m + 3:
        hp = hp.reversed()
        u, v = hp.ends
        if (g.adj[u] & v2).bit_count() < m + 3:
            _fail(g, trace, "neither endpoint reaches far enough across")
    sn = g.adj[u] & smask
    if not sn:
        _fail(g, trace, "heavy endpoint misses the independent side")
    s = next(bits(sn))
    tn = list(bits(g.adj[u] & tmask))
    if len(tn) < 2:
        _fail(g, trace, "heavy endpoint needs two clique-side neighbors")
    s1c = g.adj[v] & smask
    if s1c:
        s1 = next(bits(s1c))
        t1 = next((t for t in tn[:2] if _t_edge_without(g, tmask, t)), None)
        if t1 is None:
            _fail(g, trace, "both entry vertices isolate the clique side")
        seq1 = [t1] + list(hp.vertices) + [s1]
        s_side = [z for z in bits(smask) if z != s1]
        runs = _t_runs(g, [t for t in bits(tmask) if t != t1])
        if runs is None:
            _fail(g, trace, "clique side lost its edge")
        trace.add("Claim2", (u, v, s1, t1), route="open_both")
        return _cycle_from(seq1, g, trace), _alt_cycle(g, s_side, runs, trace)
    tv = list(bits(g.adj[v] & tmask))
    if len(tv) < 3:
        _fail(g, trace, "far endpoint needs three clique-side neighbors")
    t = next((z for z in tv if _t_edge_without(g, tmask, z)), None)
    if t is None:
        _fail(g, trace, "every exit vertex isolates the clique side")
    seq1 = [s] + list(hp.vertices) + [t]
    s_side = [z for z in bits(smask) if z != s]
    runs = _t_runs(g, [z for z in bits(tmask) if z != t])
    if runs is None:
        _fail(g, trace, "clique side lost its edge")
    trace.add("Claim2", (u, v, s, t), route="open_skew")
    return _cycle_from(seq1, g, trace), _alt_cycle(g, s_side, runs, trace)


def _claim2_closed(g, dec, c1: Cycle, trace) -> tuple[Cycle, Cycle]:
    """The open side closes on its own; lift the two busiest independent
    vertices onto it, or reroute around one clique-side vertex."""
    v1, n1 = dec.v1, dec.len1
    smask, tmask = dec.side_s, dec.side_t
    m = smask.bit_count() - 1
    k = n1 - 2
    L = list(c1.vertices)
    cross_cnt = {z: (g.adj[z] & v1).bit_count() for z in bits(smask)}
    ranked = sorted(bits(smask), key=lambda z: (-cross_cnt[z], z))
    s1, s2 = ranked[0], ranked[1]
    if 2 * cross_cnt[s1] < n1 - 1 or 2 * cross_cnt[s2] < n1 - 1:
        _fail(g, trace, "busiest independent vertices below the slot bound")
    pos1 = _consec_positions(g, c1, s1)
    pos2 = _consec_positions(g, c1, s2)
    if not pos1 or not pos2:
        _fail(g, trace, "slot bound held yet no consecutive slot")
    p4 = _find_p4(g, tmask)
    if p4 is not None:
        slot = next(
            ((i1, i2) for i1 in pos1 for i2 in pos2 if i1 != i2), None
        )
        if slot is not None:
            i1, i2 = slot
            seq1 = []
            for i in range(k):
                seq1.append(L[i])
                if i == i1:
                    seq1.append(s1)
                if i == i2:
                    seq1.append(s2)
            s_side = [z for z in bits(smask) if z not in (s1, s2)]
            runs = [p4] + [[t] for t in bits(tmask) if t not in p4]
            trace.add("Claim2.1", (s1, s2), slots=(i1, i2))
            return _cycle_from(seq1, g, trace), _alt_cycle(g, s_side, runs, trace)
        # both busiest vertices own exactly the same single slot
        i = pos1[0]
        L = L[i:] + L[:i]
        if n1 % 2 == 0:
            _fail(g, trace, "shared single slot forces an odd open side")
        pattern = mask_of([L[0], L[1]] + [L[j] for j in range(3, k - 1, 2)])
        for z in (s1, s2):
            if g.adj[z] & v1 != pattern:
                _fail(g, trace, "shared slot without the forced comb attachment")
        ta = next((t for t in bits(tmask) if g.has_edge(t, L[2])), None)
        if ta is not None:
            runs = _t_runs(g, [t for t in bits(tmask) if t != ta])
            if runs is None:
                _fail(g, trace, "clique side lost its edge")
            seq1 = [s1] + L[3:] + L[:3] + [ta]
            s_side = [z for z in bits(smask) if z != s1]
            trace.add("Claim2.1", (s1, ta), route="comb_exit")
            return _cycle_from(seq1, g, trace), _alt_cycle(g, s_side, runs, trace)
        j = next(
            (jj for jj in range(4, k, 2) if g.has_edge(L[2], L[jj])), None
        )
        if j is None:
            _fail(g, trace, "comb vertex with no odd chord")
        seq1 = (
            [s1, L[1], s2]
            + [L[x] for x in range(j - 1, 1, -1)]
            + [L[x] for x in range(j, k)]
            + [L[0]]
        )
        s_side = [z for z in bits(smask) if z not in (s1, s2)]
        runs = [p4] + [[t] for t in bits(tmask) if t not in p4]
        trace.add("Claim2.1", (s1, s2, L[2], L[j]), route="comb_chord")
        return _cycle_from(seq1, g, trace), _alt_cycle(g, s_side, runs, trace)

    # the clique side spans no 4-vertex path
    cand = None
    tlist = list(bits(tmask))
    for a, b in combinations(tlist, 2):
        if g.has_edge(a, b):
            continue
        if (g.adj[a] & tmask).bit_count() > 2 or (g.adj[b] & tmask).bit_count() > 2:
            continue
        if _t_edge_without(g, tmask, a) and _t_edge_without(g, tmask, b):
            cand = (a, b)
            break
    if cand is None:
        _fail(g, trace, "no light nonadjacent pair on the clique side")
    t1, t2 = cand
    if (g.adj[t2] & v1).bit_count() > (g.adj[t1] & v1).bit_count():
        t1, t2 = t2, t1
    if 2 * (g.adj[t1] & v1).bit_count() < n1 - 3:
        _fail(g, trace, "chosen clique-side vertex below its slot bound")
    runs_rest = _t_runs(g, [t for t in tlist if t != t1])
    if runs_rest is None:
        _fail(g, trace, "clique side lost its edge")
    s_side_all = list(bits(smask))
    c2p = _alt_cycle(g, s_side_all, [[t1]] + runs_rest, trace)
    t1m, t1p = s_side_all[0], s_side_all[1]
    ea = (g.adj[t1m] & v1).bit_count()
    eb = (g.adj[t1p] & v1).bit_count()
    if ea + eb < n1 - 1:
        _fail(g, trace, "cycle neighbors short on open-side edges")
    if 2 * ea >= n1 - 1:
        sL = t1m
    elif 2 * eb >= n1 - 1:
        sL = t1p
    else:
        _fail(g, trace, "neither cycle neighbor reaches the slot bound")
    posL = _consec_positions(g, c1, sL)
    if not posL:
        _fail(g, trace, "slot bound held yet no consecutive slot")
    i = posL[0]
    win = {(i - 1) % k, i % k, (i + 1) % k, (i + 2) % k}
    hitoff = next(
        (off for off in (-1, 0, 1, 2) if g.has_edge(t1, L[(i + off) % k])), None
    )
    if hitoff is not None:
        if hitoff == -1:
            mid = c1.arc_back(L[(i - 1) % k], L[i % k])
        elif hitoff == 0:
            mid = c1.arc_back(L[i % k], L[(i + 1) % k])
        elif hitoff == 1:
            mid = c1.arc(L[(i + 1) % k], L[i % k])
        else:
            mid = c1.arc(L[(i + 2) % k], L[(i + 1) % k])
        seq1 = [t1] + mid + [sL]
        trace.add("Claim2", (t1, sL), route="window", offset=hitoff)
    else:
        post = _consec_positions(g, c1, t1)
        j = next(
            (jj for jj in post if jj not in win and (jj + 1) % k not in win), None
        )
        if j is None:
            _fail(g, trace, "no slot for the clique-side vertex clear of the window")
        seq1 = (
            [t1]
            + c1.arc(L[(j + 1) % k], L[i % k])
            + [sL]
            + c1.arc(L[(i + 1) % k], L[j % k])
        )
        trace.add("Claim2", (t1, sL), route="twin_slots", slots=(i, j))
    s_side = [z for z in s_side_all if z != sL]
    return _cycle_from(seq1, g, trace), _alt_cycle(g, s_side, runs_rest, trace)


# === cover-trio constructions ===


def _cone_seq(m_list: list[int], p_list: list[int], q_list: list[int]) -> list[int] | None:
    """Spanning cycle using only trio-to-clique and clique-internal edges."""
    mu = len(m_list)
    if mu == 0:
        if p_list and q_list:
            return None
        run = p_list or q_list
        return list(run) if len(run) >= 3 else None
    if not q_list:
        if len(p_list) < mu:
            return None
        a, b = mu, 0
    elif not p_list:
        if len(q_list) < mu:
            return None
        a, b = 0, mu
    else:
        a, b = mu - 1, 1
        if a == 0:
            return None
        if len(p_list) < a:
            a = len(p_list)
            b = mu - a
            if len(q_list) < b:
                return None
    segs: list[list[int]] = []
    if a:
        segs += [[p] for p in p_list[: a - 1]] + [p_list[a - 1 :]]
    if b:
        segs += [[q] for q in q_list[: b - 1]] + [q_list[b - 1 :]]
    seq: list[int] = []
    for i in range(mu):
        seq.append(m_list[i])
        seq.extend(segs[i])
    return seq


def _cone_without(g, m_list, p_list, q_list, excl: set[int], trace) -> Cycle:
    seq = _cone_seq(
        [z for z in m_list if z not in excl],
        [z for z in p_list if z not in excl],
        [z for z in q_list if z not in excl],
    )
    if seq is None:
        _fail(g, trace, f"no spanning reroute after removing {sorted(excl)}")
    return _cycle_from(seq, g, trace)


def _claim3(g: Graph, dec: Decomposition, trace: SolveTrace) -> tuple[Cycle, Cycle]:
    v1, v2 = dec.v1, dec.v2
    n1, n2 = dec.len1, dec.len2
    m_list = sorted(bits(dec.free_m))
    p_list = sorted(bits(dec.clique_a))
    q_list = sorted(bits(dec.clique_b))
    if len(p_list) < len(q_list):
        p_list, q_list = q_list, p_list

    if n2 == 5:
        vlist = sorted(bits(v2))
        for triple in combinations(vlist, 3):
            tm = mask_of(triple)
            if any(g.adj[a] & tm & ~(1 << a) for a in triple):
                continue
            rest = v2 & ~tm
            if all(g.adj[z] & rest == rest for z in triple):
                dec2 = Decomposition(
                    v1, v2, n1, n2, case="near_bipartite", side_s=tm, side_t=rest
                )
                trace.add("Claim3", triple, route="reduce_to_split")
                return _claim2(g, dec2, trace)
        for x, y in combinations(vlist, 2):
            pm = (1 << x) | (1 << y)
            gc = find_hamilton_cycle(g, within=v1 | pm)
            if gc is None:
                continue
            rest_c = find_hamilton_cycle(g, within=v2 & ~pm)
            if rest_c is None:
                continue
            trace.add("Claim3", (x, y), route="exhaustive_pair")
            return gc, rest_c
        _fail(g, trace, "five-side trio admits no transferable pair")

    skel = _cone_seq(m_list, p_list, q_list)
    if skel is None:
        _fail(g, trace, "trio shape with no spanning skeleton")
    c2 = _cycle_from(skel, g, trace)
    hit = _entry_scan(g, v1, c2, trace)
    if hit is not None:
        gc, x, y = hit
        trace.add("Claim3", (x, y), route="entry")
        return gc, _cone_without(g, m_list, p_list, q_list, {x, y}, trace)
    res = _prop2(g, v1, c2, trace)
    if res[0] == "pair":
        _, x, y, gc = res
        trace.add("Claim3", (x, y), route="prop2_pair")
        return gc, _cone_without(g, m_list, p_list, q_list, {x, y}, trace)
    c1 = res[1]
    x, y = p_list[0], q_list[0]
    ex = (g.adj[x] & v1).bit_count()
    ey = (g.adj[y] & v1).bit_count()
    if ex + ey < n1 - 1:
        _fail(g, trace, "clique picks short on open-side edges")
    if 2 * ex >= n1 - 1:
        xa = x
    elif 2 * ey >= n1 - 1:
        xa = y
    else:
        _fail(g, trace, "neither clique pick reaches the slot bound")
    pos = _consec_positions(g, c1, xa)
    if not pos:
        _fail(g, trace, "slot bound held yet no consecutive slot")
    k = n1 - 2
    L = list(c1.vertices)
    i = pos[0]
    wp, w2p = L[(i + 1) % k], L[(i + 2) % k]
    xp = c2.successor(xa)
    zs = _common_nbrs(g, w2p, xp, v2 & ~(1 << xa) & ~(1 << xp))
    if not zs:
        _fail(g, trace, "slot successor pair shares no outside neighbor")
    z = zs[0]
    trace.add("Prop3", (w2p, xp), picked=z)
    gz = find_hamilton_cycle(g, within=v1 | (1 << xa) | (1 << z))
    if gz is not None:
        trace.add("Claim3", (xa, z), route="slot_direct")
        return gz, _cone_without(g, m_list, p_list, q_list, {xa, z}, trace)
    ts = _common_nbrs(g, wp, z, v2 & ~(1 << xa) & ~(1 << z))
    if not ts:
        _fail(g, trace, "slot pair shares no outside neighbor")
    if z in m_list:
        ts = [t for t in ts if t not in m_list]
        if not ts:
            _fail(g, trace, "no clique-side partner beside the trio pick")
    t = ts[0]
    trace.add("Prop3", (wp, z), picked=t)
    seq1 = c1.arc(w2p, wp) + [t, z]
    trace.add("Claim3", (xa, z, t), route="slot_rebuilt")
    return _cycle_from(seq1, g, trace), _cone_without(
        g, m_list, p_list, q_list, {z, t}, trace
    )


# === dispatch ===


def solve_from_decomposition(
    g: Graph, dec: Decomposition, trace: SolveTrace | None = None
) -> CyclePairCert:
    """Turn a tagged terminal decomposition into the certificate."""
    if trace is None:
        trace = SolveTrace()
    cases = ("all_pairs_hamiltonian", "near_bipartite", "cone_over_cliques")
    if dec.case not in cases:
        raise InputError(f"unknown decomposition case {dec.case!r}")
    if min(dec.len1, dec.len2) < 5:
        raise InputError("terminal constructions need both lengths at least 5")
    if dec.v1 & dec.v2:
        raise InputError("decomposition sides overlap")
    if dec.v1.bit_count() != dec.len1 - 2 or dec.v2.bit_count() != dec.len2 + 2:
        raise InputError("decomposition side sizes do not match its lengths")
    if dec.case == "all_pairs_hamiltonian":
        c1, c2 = _claim1(g, dec, trace)
    elif dec.case == "near_bipartite":
        c1, c2 = _claim2(g, dec, trace)
    else:
        c1, c2 = _claim3(g, dec, trace)
    cert = CyclePairCert(dec.len1, dec.len2, c1, c2)
    if not validate_cert(g, cert):
        _fail(g, trace, "terminal construction produced an invalid certificate")
    return cert


def _solve_qualified(g: Graph, n1: int, n2: int, trace: SolveTrace) -> CyclePairCert:
    small = min(n1, n2)
    if small <= 4:
        cert = prop1_small(g, small, trace)
    else:
        out = lemma26_decompose(g, n1, n2, trace)
        cert = out if isinstance(out, CyclePairCert) else solve_from_decomposition(g, out, trace)
    a, b = cert.c1, cert.c2
    if len(a) == n1 and len(b) == n2:
        cert = CyclePairCert(n1, n2, a, b)
    elif len(a) == n2 and len(b) == n1:
        cert = CyclePairCert(n1, n2, b, a)
    else:
        _fail(g, trace, "certificate lengths do not match the request")
    if not validate_cert(g, cert):
        _fail(g, trace, "constructed certificate failed validation")
    return cert


def find_disjoint_cycles(
    g: Graph, n1: int, n2: int, strategy: str = "proof_first"
) -> tuple[CyclePairCert | None, SolveTrace]:
    """Vertex-disjoint cycles of lengths n1 and n2 with n1 + n2 = |V(G)|.

    proof_first follows the constructive pipeline on qualified graphs and
    falls back to the oracle on anything else, recording why. proof_only
    never falls back: unqualified input is rejected and internal promise
    failures raise ContractViolation. oracle_only skips the pipeline.
    """
    if strategy not in STRATEGIES:
        raise InputError(f"unknown strategy {strategy!r}")
    if n1 < 3 or n2 < 3:
        raise InputError("cycle lengths must be at least 3")
    if n1 + n2 != g.n:
        raise InputError("cycle lengths must partition the vertex set")
    trace = SolveTrace()
    if strategy == "oracle_only":
        trace.add("Fallback", (), fallback=True, reason="oracle_only")
        return brute_force_oracle(g, n1, n2), trace
    qualified = _sigma2_qualified(g)
    if strategy == "proof_only":
        if not qualified:
            raise InputError(f"needs sigma2 >= {g.n + 2}")
        return _solve_qualified(g, n1, n2, trace), trace
    if not qualified:
        trace.add("Fallback", (), fallback=True, reason="sigma2_below_threshold")
        return brute_force_oracle(g, n1, n2), trace
    try:
        return _solve_qualified(g, n1, n2, trace), trace
    except ContractViolation as exc:
        trace.add("Fallback", (), fallback=True, reason="contract_violation", error=str(exc))
        return brute_force_oracle(g, n1, n2), trace
