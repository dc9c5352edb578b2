"""Exact Hamilton search and the constructive path toolkit.

The exact searches are plain backtracking over bitmasks with ascending-index
tie-breaking, so results are deterministic. The constructive ops realize the
classical degree-sum arguments: closing a spanning path into a cycle through
a crossing chord pair, turning a Hamilton cycle into a Hamilton path between
two prescribed vertices, and absorbing two outside vertices into a path. When
the stated degree bound holds these succeed without search; if the promised
configuration is missing they raise ContractViolation rather than guessing.
"""

from __future__ import annotations

from itertools import combinations

from twocycles.graphs import (
    ContractViolation,
    Cycle,
    Graph,
    InputError,
    Path,
    VertexSet,
    bits,
    encode_graph6,
)


def find_cycle_of_length(g: Graph, k: int, within: VertexSet | None = None) -> Cycle | None:
    """First k-cycle inside `within` in anchored lowest-index order, or None.

    Exact backtracking. Cycles are produced with their lowest vertex first,
    and reflections are deduplicated by requiring the second vertex to be
    smaller than the last.
    """
    vs = g.full_mask if within is None else within
    size = vs.bit_count()
    if k < 3 or k > size:
        return None
    spanning = k == size
    adj = g.adj

    for anchor in bits(vs):
        allowed = vs if spanning else vs & ~((1 << anchor) - 1)
        if allowed.bit_count() < k:
            if spanning:
                break
            continue
        path = [anchor]

        def extend(last: int, used: int) -> list[int] | None:
            if len(path) == k:
                if adj[last] >> anchor & 1 and path[1] < path[-1]:
                    return path
                return None
            cands = adj[last] & allowed & ~used
            if spanning:
                # every vertex not reachable as the next step still needs two
                # incident slots among the free vertices (or the anchor closes it)
                free = allowed & ~used
                for w in bits(free & ~cands):
                    avail = adj[w] & (free ^ (1 << w))
                    if avail.bit_count() < 2 and not adj[w] >> anchor & 1:
                        return None
            for w in bits(cands):
                path.append(w)
                got = extend(w, used | 1 << w)
                if got is not None:
                    return got
                path.pop()
            return None

        got = extend(anchor, 1 << anchor)
        if got is not None:
            return Cycle(tuple(got))
        if spanning:
            break
    return None


def find_hamilton_cycle(g: Graph, within: VertexSet | None = None) -> Cycle | None:
    vs = g.full_mask if within is None else within
    return find_cycle_of_length(g, vs.bit_count(), within=vs)


def find_hamilton_path_between(
    g: Graph, u: int, v: int, within: VertexSet | None = None
) -> Path | None:
    """Spanning path of G[within] from u to v by exact search, or None."""
    vs = g.full_mask if within is None else within
    if u == v:
        raise InputError("hamilton path endpoints must be distinct")
    if not (vs >> u & 1 and vs >> v & 1):
        raise InputError("endpoints must lie in the searched set")
    size = vs.bit_count()
    if size == 2:
        return Path((u, v)) if g.has_edge(u, v) else None
    adj = g.adj
    vbit = 1 << v
    path = [u]

    def extend(last: int, used: int) -> list[int] | None:
        if used == vs:
            return path if last == v else None
        free = vs & ~used
        # every unplaced vertex still needs a way through, the target one way in
        for w in bits(free):
            avail = (adj[w] & (free | 1 << last)) & ~(1 << w)
            need = 1 if w == v else 2
            if avail.bit_count() < need:
                return None
        cands = adj[last] & free
        if free != vbit:
            cands &= ~vbit
        for w in bits(cands):
            path.append(w)
            got = extend(w, used | 1 << w)
            if got is not None:
                return got
            path.pop()
        return None

    got = extend(u, 1 << u)
    return Path(tuple(got)) if got is not None else None


def find_hamilton_path(g: Graph, within: VertexSet | None = None) -> Path | None:
    """Spanning path of G[within] with free endpoints, or None."""
    vs = g.full_mask if within is None else within
    size = vs.bit_count()
    if size == 0:
        return None
    if size == 1:
        return Path((next(bits(vs)),))
    adj = g.adj

    for start in bits(vs):
        path = [start]

        def extend(last: int, used: int) -> list[int] | None:
            if used == vs:
                return path
            free = vs & ~used
            weak = 0
            for w in bits(free):
                avail = (adj[w] & (free | 1 << last)) & ~(1 << w)
                c = avail.bit_count()
                if c == 0:
                    return None
                if c < 2:
                    weak += 1
                    if weak > 1:
                        return None
            for w in bits(adj[last] & free):
                path.append(w)
                got = extend(w, used | 1 << w)
                if got is not None:
                    return got
                path.pop()
            return None

        got = extend(start, 1 << start)
        if got is not None:
            return Path(tuple(got))
    return None


def close_path_ore(g: Graph, path: Path) -> Cycle:
    """Close a path over its own vertex set into a cycle on the same set.

    Either the endpoints are adjacent, or a crossing chord pair exists when
    the endpoint degree sum inside the path's vertex set reaches the path
    length. The first crossing in scan order is used.
    """
    p = path.vertices
    k = len(p)
    if k < 3:
        raise InputError("need at least 3 vertices to close a cycle")
    u, v = p[0], p[-1]
    if g.has_edge(u, v):
        return Cycle(p)
    for i in range(k - 1):
        if g.has_edge(v, p[i]) and g.has_edge(u, p[i + 1]):
            return Cycle(p[: i + 1] + p[:i:-1])
    host = path.mask
    ds = g.degree(u, within=host) + g.degree(v, within=host)
    raise ContractViolation(
        f"no crossing chords closing a {k}-path, endpoint degree sum {ds}",
        graph6=encode_graph6(g),
    )


def _rotate_via_crossing(g: Graph, orient: Cycle, u: int, v: int) -> Path:
    # spanning path of the cycle's vertex set from u to v, given
    # deg(u+) + deg(v+) >= N + 1 inside the host
    q_arc = orient.arc(orient.successor(u), v)
    r_arc = orient.arc_back(u, orient.successor(v))
    p = q_arc + [-1] + r_arc
    qlen = len(q_arc)
    a, b = p[0], p[-1]
    for i in range(len(p) - 1):
        if i == qlen - 1 or i == qlen:
            continue
        if g.has_edge(b, p[i]) and g.has_edge(a, p[i + 1]):
            cyc = p[: i + 1] + p[:i:-1]
            z = cyc.index(-1)
            out = cyc[z + 1:] + cyc[:z]
            if out[0] != u:
                out.reverse()
            return Path(tuple(out))
    raise ContractViolation(
        "crossing promised by the rotation degree bound is missing",
        graph6=encode_graph6(g),
    )


def rotate_endpoints(g: Graph, cycle: Cycle, u: int, v: int, trace=None) -> Path | None:
    """Spanning path of the cycle's vertex set from u to v.

    Constructive when u, v are consecutive or when a successor (or
    predecessor) pair meets the rotation degree bound; otherwise falls back
    to exact search and records that in the trace.
    """
    host = cycle.mask
    if u == v or not (host >> u & 1 and host >> v & 1):
        raise InputError("rotation endpoints must be distinct cycle vertices")
    n_host = len(cycle)
    if cycle.successor(u) == v:
        return Path(tuple(cycle.arc_back(u, v)))
    if cycle.successor(v) == u:
        return Path(tuple(cycle.arc(u, v)))
    for orient in (cycle, cycle.reversed()):
        a = orient.successor(u)
        b = orient.successor(v)
        if g.degree(a, within=host) + g.degree(b, within=host) >= n_host + 1:
            return _rotate_via_crossing(g, orient, u, v)
    got = find_hamilton_path_between(g, u, v, within=host)
    if trace is not None:
        trace.add("Fallback", (u, v), fallback=True, op="rotate_endpoints")
    return got


def _assemble(g: Graph, pieces: list[tuple[int, ...]], u: int, v: int) -> list[int] | None:
    # order pieces and the two singletons into one path, checking junctions
    items: list[tuple[tuple[int, ...], ...]] = [(piece, piece[::-1]) for piece in pieces]
    items.append(((u,),))
    items.append(((v,),))
    total = len(items)
    used = [False] * total
    seq: list[int] = []

    def place(count: int, last: int | None) -> list[int] | None:
        if count == total:
            return seq
        for idx in range(total):
            if used[idx]:
                continue
            for variant in items[idx]:
                if last is not None and not g.has_edge(last, variant[0]):
                    continue
                used[idx] = True
                seq.extend(variant)
                got = place(count + 1, variant[-1])
                if got is not None:
                    return got
                del seq[len(seq) - len(variant):]
                used[idx] = False
        return None

    return place(0, None)


def absorb_pair(g: Graph, path: Path, u: int, v: int) -> Path:
    """Spanning path of V(path) + {u, v}, given k + 2 attachment edges.

    Tries inserting u, v together between one adjacent attachment pair first,
    then enumerates reassemblies of the path cut in at most two places. The
    attachment bound makes some shape work; running out is a contract
    violation, not a cue to search the whole induced subgraph.
    """
    p = path.vertices
    k = len(p)
    pmask = path.mask
    if u == v or pmask >> u & 1 or pmask >> v & 1:
        raise InputError("absorb_pair needs two distinct vertices outside the path")
    att = g.degree(u, within=pmask) + g.degree(v, within=pmask)
    if att < k + 2:
        raise InputError(f"absorb_pair needs {k + 2} attachments, have {att}")
    in_a = [g.has_edge(u, w) for w in p]
    in_b = [g.has_edge(v, w) for w in p]
    if g.has_edge(u, v):
        for i in range(k - 1):
            if in_a[i] and in_b[i + 1]:
                return Path(p[: i + 1] + (u, v) + p[i + 1:])
            if in_b[i] and in_a[i + 1]:
                return Path(p[: i + 1] + (v, u) + p[i + 1:])
        if in_b[0]:
            return Path((u, v) + p)
        if in_a[0]:
            return Path((v, u) + p)
        if in_a[-1]:
            return Path(p + (u, v))
        if in_b[-1]:
            return Path(p + (v, u))
    for ncuts in range(3):
        for cuts in combinations(range(k - 1), ncuts):
            pieces = []
            prev = 0
            for c in cuts:
                pieces.append(p[prev: c + 1])
                prev = c + 1
            pieces.append(p[prev:])
            got = _assemble(g, pieces, u, v)
            if got is not None:
                return Path(tuple(got))
    raise ContractViolation(
        f"no insertion shape absorbs the pair ({u}, {v}) with {att} attachments",
        graph6=encode_graph6(g),
    )


def hamilton_connected_by_sigma(g: Graph, within: VertexSet | None = None) -> bool:
    """True when the degree-sum bound guarantees a spanning path between
    every vertex pair: sigma2 at least size + 1, or no nonadjacent pair."""
    from twocycles.graphs import sigma2

    vs = g.full_mask if within is None else within
    s = sigma2(g, within=vs)
    return s is None or s >= vs.bit_count() + 1
