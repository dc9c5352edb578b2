"""Bitmask graphs, degree-sum bounds, and graph6 interchange.

Vertices are integers 0..n-1. A vertex set is an int bitmask, adjacency is a
tuple of per-vertex neighbor masks, so neighborhood algebra is plain int ops.
Graphs are immutable and hashable. Everything downstream (cycle search, the
constructive solver, the verification harness) works on these.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

MIN_VERTICES = 3
MAX_VERTICES = 64


class InputError(ValueError):
    """Bad arguments or malformed input data."""


class ContractViolation(Exception):
    """A construction step promised by the degree bounds failed to apply.

    Carries the offending graph as graph6 plus the trace collected so far,
    so a failure can be replayed from the report line alone.
    """

    def __init__(self, message: str, *, graph6: str | None = None, trace=None):
        super().__init__(message)
        self.graph6 = graph6
        self.trace = trace

    def __str__(self) -> str:
        base = super().__str__()
        if self.graph6 is not None:
            base += f" [graph6 {self.graph6!r}]"
        return base


VertexSet = int


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def lowest_bit(mask: int) -> int:
    if not mask:
        raise InputError("empty vertex set")
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int, within: VertexSet | None = None) -> int:
        m = self.adj[v]
        if within is not None:
            m &= within
        return m.bit_count()

    def neighbors(self, v: int, within: VertexSet | None = None) -> list[int]:
        m = self.adj[v]
        if within is not None:
            m &= within
        return list(bits(m))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            higher = self.adj[v] >> (v + 1)
            for w in bits(higher):
                out.append((v, v + 1 + w))
        return out

    def edge_count(self, within: VertexSet | None = None) -> int:
        vs = self.full_mask if within is None else within
        total = 0
        for v in bits(vs):
            total += (self.adj[v] & vs).bit_count()
        return total // 2

    def is_clique(self, vs: VertexSet) -> bool:
        for v in bits(vs):
            if self.adj[v] & vs != vs ^ (1 << v):
                return False
        return True

    def is_independent(self, vs: VertexSet) -> bool:
        for v in bits(vs):
            if self.adj[v] & vs:
                return False
        return True


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if not _vertex_count_ok(n):
        raise InputError(f"vertex count {n} outside [{MIN_VERTICES}, {MAX_VERTICES}]")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise InputError(f"loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def _vertex_count_ok(n: int) -> bool:
    return MIN_VERTICES <= n <= MAX_VERTICES


def sigma2(g: Graph, within: VertexSet | None = None) -> int | None:
    """Minimum degree sum over nonadjacent vertex pairs, None if no such pair.

    With `within` set, both the pair and the degrees are taken in the induced
    subgraph. A complete (or single-vertex) graph has no nonadjacent pair and
    the bound is absent; callers treat absent as satisfying every threshold.
    """
    vs = g.full_mask if within is None else within
    vlist = list(bits(vs))
    deg = [(g.adj[v] & vs).bit_count() for v in vlist]
    best: int | None = None
    for a in range(len(vlist)):
        u = vlist[a]
        row = g.adj[u]
        du = deg[a]
        for b in range(a + 1, len(vlist)):
            if not (row >> vlist[b] & 1):
                s = du + deg[b]
                if best is None or s < best:
                    best = s
    return best


def min_degree(g: Graph, within: VertexSet | None = None) -> int:
    vs = g.full_mask if within is None else within
    return min((g.adj[v] & vs).bit_count() for v in bits(vs))


def inner_edges(g: Graph, vs: VertexSet) -> int:
    return g.edge_count(within=vs)


def cross_edges(g: Graph, a: VertexSet, b: VertexSet) -> int:
    if a & b:
        raise InputError("cross_edges needs disjoint vertex sets")
    total = 0
    for v in bits(a):
        total += (g.adj[v] & b).bit_count()
    return total


# === paths, cycles, certificates ===


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def reversed(self) -> Path:
        return Path(self.vertices[::-1])


@dataclass(frozen=True)
class Cycle:
    """Vertex sequence with an implicit closing edge, orientation-aware."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    def index(self, v: int) -> int:
        return self.vertices.index(v)

    def successor(self, v: int) -> int:
        i = self.vertices.index(v)
        return self.vertices[(i + 1) % len(self.vertices)]

    def predecessor(self, v: int) -> int:
        i = self.vertices.index(v)
        return self.vertices[i - 1]

    def reversed(self) -> Cycle:
        return Cycle(self.vertices[::-1])

    def arc(self, a: int, b: int) -> list[int]:
        """Vertices from a to b inclusive, following the orientation."""
        seq = self.vertices
        k = len(seq)
        i = seq.index(a)
        out = [a]
        while seq[i] != b:
            i = (i + 1) % k
            out.append(seq[i])
        return out

    def arc_back(self, a: int, b: int) -> list[int]:
        """Vertices from a to b inclusive, against the orientation."""
        seq = self.vertices
        i = seq.index(a)
        out = [a]
        while seq[i] != b:
            i = (i - 1) % len(seq)
            out.append(seq[i])
        return out


def is_path(g: Graph, seq: tuple[int, ...] | list[int]) -> bool:
    if len(seq) == 0 or len(set(seq)) != len(seq):
        return False
    if any(not (0 <= v < g.n) for v in seq):
        return False
    return all(g.has_edge(seq[i], seq[i + 1]) for i in range(len(seq) - 1))


def is_cycle(g: Graph, seq: tuple[int, ...] | list[int]) -> bool:
    if len(seq) < 3:
        return False
    return is_path(g, seq) and g.has_edge(seq[-1], seq[0])


@dataclass(frozen=True)
class CyclePairCert:
    """Two vertex-disjoint cycles answering a (n1, n2) length request."""

    n1: int
    n2: int
    c1: Cycle
    c2: Cycle


def validate_cert(g: Graph, cert: CyclePairCert) -> bool:
    a, b = cert.c1, cert.c2
    if a.mask & b.mask:
        return False
    if sorted((len(a), len(b))) != sorted((cert.n1, cert.n2)):
        return False
    return is_cycle(g, a.vertices) and is_cycle(g, b.vertices)


# === graph6 ===

_G6_HEADER = ">>graph6<<"


def _g6_size(g6: bytes) -> tuple[int, int]:
    """Return (n, offset of the first edge-bit byte)."""
    if not g6:
        raise InputError("empty graph6 string")
    b0 = g6[0]
    if b0 != 126:
        n = b0 - 63
        if not 0 <= n <= 62:
            raise InputError(f"invalid graph6 byte 0x{b0:02x} at offset 0")
        return n, 1
    if len(g6) >= 2 and g6[1] == 126:
        raise InputError("graph6 8-byte size form exceeds the 64-vertex cap")
    if len(g6) < 4:
        raise InputError("truncated graph6 long-form size")
    n = 0
    for k in (1, 2, 3):
        b = g6[k]
        if not 63 <= b <= 126:
            raise InputError(f"invalid graph6 byte 0x{b:02x} at offset {k}")
        n = n << 6 | (b - 63)
    if n < 63:
        raise InputError(f"nonstandard graph6 long form for n={n}")
    return n, 4


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line into a Graph.

    Raises InputError, with the byte offset of the problem, on anything
    malformed: bad characters, truncation, trailing data, nonzero padding,
    or a vertex count outside this package's 3..64 range.
    """
    if isinstance(text, str):
        g6 = text.strip().encode("ascii", errors="replace")
    else:
        g6 = bytes(text).strip()
    if g6.startswith(_G6_HEADER.encode()):
        g6 = g6[len(_G6_HEADER):]
    n, off = _g6_size(g6)
    if not _vertex_count_ok(n):
        raise InputError(f"graph6 vertex count {n} outside [{MIN_VERTICES}, {MAX_VERTICES}]")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(g6) - off < nbytes:
        raise InputError(f"truncated graph6: need {nbytes} edge bytes, got {len(g6) - off}")
    if len(g6) - off > nbytes:
        raise InputError(f"trailing data at offset {off + nbytes}")
    adj = [0] * n
    i, j = 0, 1
    for k in range(nbytes):
        b = g6[off + k]
        if not 63 <= b <= 126:
            raise InputError(f"invalid graph6 byte 0x{b:02x} at offset {off + k}")
        group = b - 63
        for shift in range(5, -1, -1):
            bit = group >> shift & 1
            if j >= n:
                if bit:
                    raise InputError(f"nonzero padding at offset {off + k}")
                continue
            if bit:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, tuple(adj))


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = [n + 63]
    else:
        head = [126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)]
    out = head
    group = 0
    nbits = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            group = group << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(group + 63)
                group, nbits = 0, 0
    if nbits:
        out.append((group << (6 - nbits)) + 63)
    return bytes(out).decode("ascii")


# === edge-list format ===


def parse_edgelist(text: str) -> Graph:
    """Read the plain text format: a 'n m' header then m 'u v' lines.

    Blank lines and '#' comments are allowed anywhere.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise InputError("empty edge-list input")
    head = rows[0][1].split()
    if len(head) != 2:
        raise InputError(f"line {rows[0][0]}: expected 'n m' header")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise InputError(f"line {rows[0][0]}: expected integers in header") from None
    if len(rows) - 1 != m:
        raise InputError(f"header claims {m} edges, found {len(rows) - 1}")
    edges = []
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: expected integer endpoints") from None
        edges.append((u, v))
    return build_graph(n, edges)


def encode_edgelist(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"
