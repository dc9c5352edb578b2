#!/usr/bin/env python3
"""Generate the isomorphism-reduced graph corpora shipped under fixtures/.

One representative per isomorphism class for each order n in 3..9, produced
by single-vertex augmentation from the (n-1)-vertex representatives and
deduplicated by an exact canonical form. The canonical form is the minimum
upper-triangle bitstring over a color-refinement / individualization search
tree, so no external isomorphism library is involved.

The per-order class counts are asserted against the known values, which
validates the whole chain end to end. Expect roughly 10-20 minutes for the
n=9 level on one core.

Usage: python3 tools/gen_fixtures.py [outdir]
"""

import sys
import time

# number of graphs on n unlabeled vertices, n = 1..9
KNOWN_COUNTS = [1, 2, 4, 11, 34, 156, 1044, 12346, 274668]


def _refine(n, nbrs, colors):
    while True:
        sigs = []
        for v in range(n):
            nb = sorted(colors[w] for w in nbrs[v])
            sigs.append((colors[v], tuple(nb)))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        nc = [order[s] for s in sigs]
        if nc == colors:
            return colors
        colors = nc


def _cells(n, colors):
    by = {}
    for v in range(n):
        by.setdefault(colors[v], []).append(v)
    return [by[c] for c in sorted(by)]


def _quotient_determined(adj, cells):
    # stable coloring given; graph is forced by the quotient iff every cell
    # induces an empty or complete graph and every cell pair is empty or
    # complete bipartite
    masks = [sum(1 << v for v in cell) for cell in cells]
    for a, cell in enumerate(cells):
        v0 = cell[0]
        d = (adj[v0] & masks[a]).bit_count()
        if d not in (0, len(cell) - 1):
            return False
        for b in range(a + 1, len(cells)):
            c = (adj[v0] & masks[b]).bit_count()
            if c not in (0, len(cells[b])):
                return False
    return True


def _leaf_value(n, adj, perm):
    val = 0
    for a in range(n):
        pa = perm[a]
        row = adj[pa]
        for b in range(a + 1, n):
            val = val << 1 | (row >> perm[b] & 1)
    return val


def _canon_search(n, adj, nbrs, colors):
    colors = _refine(n, nbrs, colors)
    cells = _cells(n, colors)
    if all(len(c) == 1 for c in cells):
        return _leaf_value(n, adj, [c[0] for c in cells])
    if _quotient_determined(adj, cells):
        perm = [v for cell in cells for v in cell]
        return _leaf_value(n, adj, perm)
    target = next(c for c in cells if len(c) > 1)
    best = None
    for v in target:
        nc = [2 * c + 1 for c in colors]
        nc[v] -= 1
        got = _canon_search(n, adj, nbrs, nc)
        if best is None or got < best:
            best = got
    return best


def canon_form(n, adj):
    """Exact canonical invariant: equal iff the graphs are isomorphic."""
    nbrs = [[w for w in range(n) if adj[v] >> w & 1] for v in range(n)]
    return _canon_search(n, adj, nbrs, [0] * n)


def augment(reps, n):
    """All reps on n vertices from the reps on n-1, by new-vertex attachment."""
    seen = set()
    out = []
    for padj in reps:
        base = list(padj) + [0]
        for sub in range(1 << (n - 1)):
            adj = base.copy()
            adj[n - 1] = sub
            m = sub
            while m:
                low = m & -m
                adj[low.bit_length() - 1] |= 1 << (n - 1)
                m ^= low
            cf = canon_form(n, adj)
            if cf not in seen:
                seen.add(cf)
                out.append(tuple(adj))
    return out


def graph6_line(n, adj):
    out = [n + 63]
    group = 0
    nbits = 0
    for j in range(1, n):
        col = adj[j]
        for i in range(j):
            group = group << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(group + 63)
                group, nbits = 0, 0
    if nbits:
        out.append((group << (6 - nbits)) + 63)
    return bytes(out).decode("ascii")


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "fixtures"
    reps = [(0,)]
    assert canon_form(1, (0,)) == 0
    for n in range(2, 10):
        t0 = time.time()
        reps = augment(reps, n)
        want = KNOWN_COUNTS[n - 1]
        if len(reps) != want:
            print(f"FATAL n={n}: got {len(reps)} classes, want {want}", flush=True)
            sys.exit(1)
        print(f"n={n}: {len(reps)} classes in {time.time() - t0:.1f}s", flush=True)
        if n >= 3:
            lines = sorted(graph6_line(n, adj) for adj in reps)
            path = f"{outdir}/graphs_n{n}.g6"
            with open(path, "w") as fh:
                fh.write("\n".join(lines) + "\n")
            print(f"  wrote {path}", flush=True)
    print("done", flush=True)


if __name__ == "__main__":
    main()
