"""Structure classification under near-Hamilton degree bounds, plus families.

A graph on N vertices with sigma2 at least N - 1 is Hamiltonian, or splits
its vertices into an independent half complete to the rest, or is a cone
over two disjoint cliques. classify_near_hamiltonian finds which, with
priority in that order, and returns an explicit witness. A twin classifier
written against plain permutations and subset scans backs it in tests.

The family side gives the named constructions used by generators and the
CLI: complete, edgeless, complete bipartite, join, disjoint union, closed
under composition, with a small text syntax like J(K3, U(K2, K2)).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import ceil

from twocycles.graphs import (
    ContractViolation,
    Cycle,
    Graph,
    InputError,
    VertexSet,
    bits,
    build_graph,
    encode_graph6,
    min_degree,
    sigma2,
)
from twocycles.hamilton import find_hamilton_cycle


@dataclass(frozen=True)
class StructureClass:
    """Tagged classification witness.

    kind "hamilton_cycle": cycle holds a spanning cycle.
    kind "near_bipartite": side_s is the independent side with m + 1
    vertices, complete to side_t with m vertices, N = 2m + 1.
    kind "cone_over_cliques": cut_vertex is adjacent to everything and
    clique_a, clique_b partition the rest into two cliques with no edges
    between them, |clique_a| >= |clique_b|.
    """

    kind: str
    cycle: Cycle | None = None
    side_s: VertexSet = 0
    side_t: VertexSet = 0
    cut_vertex: int = -1
    clique_a: VertexSet = 0
    clique_b: VertexSet = 0


def _components(g: Graph, vs: VertexSet) -> list[VertexSet]:
    out = []
    left = vs
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= g.adj[v] & vs
            frontier = grow & ~comp
            comp |= frontier
        out.append(comp)
        left &= ~comp
    return out


def classify_near_hamiltonian(g: Graph, within: VertexSet | None = None) -> StructureClass:
    """Trichotomy for sigma2 >= N - 1: spanning cycle, independent half, or
    cone over two cliques, in that priority order.

    The independent-half case is found directly: its vertices are exactly
    the ones of induced degree m, since the other side has degree at least
    m + 1, so no subset search is needed. The graph6 of the host graph rides
    along on the ContractViolation if no case applies.
    """
    vs = g.full_mask if within is None else within
    size = vs.bit_count()
    s2 = sigma2(g, within=vs)
    if s2 is not None and s2 < size - 1:
        raise InputError(f"classifier needs sigma2 >= {size - 1}, have {s2}")

    hc = find_hamilton_cycle(g, within=vs)
    if hc is not None:
        return StructureClass("hamilton_cycle", cycle=hc)

    if size >= 5 and size % 2 == 1:
        m = (size - 1) // 2
        smask = 0
        for v in bits(vs):
            if (g.adj[v] & vs).bit_count() == m:
                smask |= 1 << v
        if smask.bit_count() == m + 1:
            tmask = vs & ~smask
            ok = all(g.adj[v] & vs == tmask for v in bits(smask))
            if ok:
                return StructureClass("near_bipartite", side_s=smask, side_t=tmask)

    for c in bits(vs):
        rest = vs ^ (1 << c)
        if g.adj[c] & vs != rest:
            continue
        comps = _components(g, rest)
        if len(comps) == 2 and all(g.is_clique(cm) for cm in comps):
            a, b = comps
            if a.bit_count() < b.bit_count():
                a, b = b, a
            return StructureClass("cone_over_cliques", cut_vertex=c, clique_a=a, clique_b=b)

    raise ContractViolation(
        f"no structure case applies at sigma2 {s2} on {size} vertices",
        graph6=encode_graph6(g),
    )


def classify_near_hamiltonian_brute(g: Graph, within: VertexSet | None = None) -> StructureClass:
    """Same trichotomy and priority, written independently: permutation scan
    for the spanning cycle, subset scans for the other two cases."""
    vs = g.full_mask if within is None else within
    verts = [v for v in range(g.n) if vs >> v & 1]
    size = len(verts)
    s2 = sigma2(g, within=vs)
    if s2 is not None and s2 < size - 1:
        raise InputError(f"classifier needs sigma2 >= {size - 1}, have {s2}")

    def edge(a: int, b: int) -> bool:
        return bool(g.adj[a] >> b & 1)

    if size >= 3:
        first = verts[0]
        for perm in permutations(verts[1:]):
            if perm[0] > perm[-1]:
                continue
            seq = (first,) + perm
            if all(edge(seq[i], seq[i + 1]) for i in range(size - 1)) and edge(seq[-1], first):
                return StructureClass("hamilton_cycle", cycle=Cycle(seq))

    if size >= 5 and size % 2 == 1:
        m = (size - 1) // 2
        for combo in combinations(verts, m + 1):
            others = [v for v in verts if v not in combo]
            if any(edge(a, b) for a, b in combinations(combo, 2)):
                continue
            if all(edge(s, t) for s in combo for t in others):
                smask = sum(1 << v for v in combo)
                return StructureClass("near_bipartite", side_s=smask, side_t=vs & ~smask)

    for c in verts:
        others = [v for v in verts if v != c]
        if not all(edge(c, v) for v in others):
            continue
        comp: set[int] = {others[0]}
        queue = [others[0]]
        while queue:
            x = queue.pop()
            for y in others:
                if y not in comp and edge(x, y):
                    comp.add(y)
                    queue.append(y)
        rest = [v for v in others if v not in comp]
        if not rest:
            continue
        if any(edge(a, b) for a in comp for b in rest):
            continue
        if all(edge(a, b) for a, b in combinations(sorted(comp), 2)) and all(
            edge(a, b) for a, b in combinations(rest, 2)
        ):
            amask = sum(1 << v for v in comp)
            bmask = sum(1 << v for v in rest)
            if amask.bit_count() < bmask.bit_count():
                amask, bmask = bmask, amask
            return StructureClass("cone_over_cliques", cut_vertex=c, clique_a=amask, clique_b=bmask)

    raise ContractViolation(
        f"no structure case applies at sigma2 {s2} on {size} vertices",
        graph6=encode_graph6(g),
    )


def same_structure(a: StructureClass, b: StructureClass) -> bool:
    """Agreement up to witness choice: same kind and same defining sets."""
    if a.kind != b.kind:
        return False
    if a.kind == "hamilton_cycle":
        return True
    if a.kind == "near_bipartite":
        return a.side_s == b.side_s and a.side_t == b.side_t
    return (
        a.cut_vertex == b.cut_vertex
        and {a.clique_a, a.clique_b} == {b.clique_a, b.clique_b}
    )


def verify_witness(g: Graph, sc: StructureClass, within: VertexSet | None = None) -> bool:
    """Re-check a classification witness from first principles.

    Every defining property is tested directly against the graph, so this
    accepts nothing on the classifier's say-so.
    """
    vs = g.full_mask if within is None else within
    if sc.kind == "hamilton_cycle":
        if sc.cycle is None or sc.cycle.mask != vs:
            return False
        seq = sc.cycle.vertices
        return all(g.has_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))
    if sc.kind == "near_bipartite":
        s, t = sc.side_s, sc.side_t
        if s & t or (s | t) != vs or s.bit_count() != t.bit_count() + 1:
            return False
        if not g.is_independent(s):
            return False
        return all(g.adj[v] & vs == t for v in bits(s))
    if sc.kind == "cone_over_cliques":
        c, a, b = sc.cut_vertex, sc.clique_a, sc.clique_b
        if c < 0 or a & b or (a | b | 1 << c) != vs or 1 << c & (a | b):
            return False
        if a.bit_count() < b.bit_count() or not a or not b:
            return False
        if g.adj[c] & vs != vs ^ 1 << c:
            return False
        for v in bits(a):
            if g.adj[v] & b:
                return False
        return g.is_clique(a) and g.is_clique(b)
    return False


# === graph families ===


@dataclass(frozen=True)
class Family:
    """A concrete labeled graph family member: vertex count plus edge list."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def graph(self) -> Graph:
        return build_graph(self.n, self.edges)


def complete(k: int) -> Family:
    if k < 1:
        raise InputError("complete family needs k >= 1")
    return Family(k, tuple((i, j) for i in range(k) for j in range(i + 1, k)))


def edgeless(k: int) -> Family:
    if k < 1:
        raise InputError("edgeless family needs k >= 1")
    return Family(k, ())


def disjoint_union(*parts: Family) -> Family:
    if not parts:
        raise InputError("disjoint_union needs at least one part")
    edges: list[tuple[int, int]] = []
    off = 0
    for part in parts:
        edges.extend((u + off, v + off) for u, v in part.edges)
        off += part.n
    return Family(off, tuple(edges))


def join(*parts: Family) -> Family:
    """Disjoint union plus all edges between distinct parts."""
    if not parts:
        raise InputError("join needs at least one part")
    base = disjoint_union(*parts)
    edges = list(base.edges)
    offsets = []
    off = 0
    for part in parts:
        offsets.append(off)
        off += part.n
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            for u in range(parts[a].n):
                for v in range(parts[b].n):
                    edges.append((offsets[a] + u, offsets[b] + v))
    return Family(base.n, tuple(edges))


def complete_bipartite(a: int, b: int) -> Family:
    return join(edgeless(a), edgeless(b))


class _FamilyParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, what: str) -> InputError:
        return InputError(f"family syntax: {what} at position {self.pos} in {self.text!r}")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start: self.pos])

    def expr(self) -> Family:
        head = self.peek()
        if head == "K":
            self.pos += 1
            return complete(self.integer())
        if head == "E":
            self.pos += 1
            return edgeless(self.integer())
        if head == "B":
            self.pos += 1
            self.expect("(")
            a = self.integer()
            self.expect(",")
            b = self.integer()
            self.expect(")")
            return complete_bipartite(a, b)
        if head in ("J", "U"):
            op = head
            self.pos += 1
            self.expect("(")
            parts = [self.expr()]
            while self.peek() == ",":
                self.pos += 1
                parts.append(self.expr())
            self.expect(")")
            return join(*parts) if op == "J" else disjoint_union(*parts)
        raise self.error("expected K, E, B, J, or U")

    def parse(self) -> Family:
        fam = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing input")
        return fam


def parse_family(text: str) -> Family:
    return _FamilyParser(text).parse()


def gen_family(spec: str | Family) -> Graph:
    fam = parse_family(spec) if isinstance(spec, str) else spec
    return fam.graph()


# === named degree conditions ===


def ore_condition(g: Graph) -> bool:
    s = sigma2(g)
    return s is None or s >= g.n


def elzahar_condition(g: Graph, lengths: tuple[int, ...]) -> bool:
    """Minimum degree at least the sum of ceil(length / 2) over the parts."""
    if sum(lengths) != g.n:
        raise InputError("part lengths must sum to the vertex count")
    if any(k < 3 for k in lengths):
        raise InputError("every part length must be at least 3")
    return min_degree(g) >= sum(ceil(k / 2) for k in lengths)


def is_balanced_complete_bipartite(g: Graph) -> bool:
    if g.n % 2:
        return False
    side_a = (g.full_mask & ~g.adj[0]) | 1
    side_b = g.full_mask & ~side_a
    if side_a.bit_count() != g.n // 2:
        return False
    if not (g.is_independent(side_a) and g.is_independent(side_b)):
        return False
    return all(g.adj[v] == side_b for v in bits(side_a))
