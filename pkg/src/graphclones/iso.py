"""Canonical labeling, isomorphism testing and automorphisms for small graphs.

Individualization/refinement search: refine to an equitable ordered partition,
branch on the first smallest non-singleton cell, and keep the leaf whose
relabelled adjacency bit-string (graph6 bit order) is lexicographically
smallest. Branches are pruned with twin swaps and with automorphisms
discovered at earlier leaves; both are label-invariant, so the minimum is
unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graphcore import Graph, GraphError, graph6_encode

Perm = tuple[int, ...]


@dataclass(frozen=True)
class CanonicalForm:
    graph6: str
    perm: Perm  # source vertex v sits at position perm[v] of the canonical graph
    graph: Graph


def _mask(cell) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Fragments of a split cell are ordered by neighbour count, never by label.
    """
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for s in range(len(cells)):
            smask = _mask(cells[s])
            out = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                buckets: dict[int, list[int]] = {}
                for v in cell:
                    buckets.setdefault((g.adj[v] & smask).bit_count(), []).append(v)
                if len(buckets) == 1:
                    out.append(cell)
                else:
                    changed = True
                    out.extend(buckets[k] for k in sorted(buckets))
            cells = out
            if changed:
                break
    return cells


def _code(g: Graph, perm: list[int]) -> int:
    # bits x(0,1), x(0,2), x(1,2), x(0,3), ... of the relabelled graph, first bit most significant
    inv = [0] * g.n
    for v, p in enumerate(perm):
        inv[p] = v
    code = 0
    for j in range(1, g.n):
        row = g.adj[inv[j]]
        for i in range(j):
            code = code << 1 | (row >> inv[i] & 1)
    return code


def _orbit_reps(cands: list[int], autos: list[Perm], fixed: list[int]) -> dict[int, int]:
    parent = {v: v for v in cands}

    def find(v):
        while parent.setdefault(v, v) != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a in autos:
        if all(a[p] == p for p in fixed):
            for v in cands:
                ra, rb = find(v), find(a[v])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    return {v: find(v) for v in cands}


def _search(g: Graph):
    best_code = None
    best_perm: list[int] | None = None
    autos: list[Perm] = []

    def leaf(cells):
        nonlocal best_code, best_perm
        perm = [0] * g.n
        for pos, cell in enumerate(cells):
            perm[cell[0]] = pos
        code = _code(g, perm)
        if best_code is None or code < best_code:
            best_code, best_perm = code, perm
        elif code == best_code:
            inv = [0] * g.n
            for v, p in enumerate(best_perm):
                inv[p] = v
            autos.append(tuple(inv[perm[v]] for v in range(g.n)))

    def visit(cells, prefix):
        cells = refine(g, cells)
        if len(cells) == g.n:
            leaf(cells)
            return
        size = min(len(c) for c in cells if len(c) > 1)
        t = next(i for i, c in enumerate(cells) if len(c) == size)
        target = sorted(cells[t])
        seen_twins: list[int] = []
        explored: list[int] = []
        for v in target:
            if any(_twins(g, v, w) for w in seen_twins):
                continue
            seen_twins.append(v)
            if explored:
                reps = _orbit_reps(target, autos, prefix)
                if any(reps[v] == reps[w] for w in explored):
                    continue
            explored.append(v)
            rest = [w for w in cells[t] if w != v]
            visit(cells[:t] + [[v], rest] + cells[t + 1:], prefix + [v])

    if g.n:
        visit([list(range(g.n))], [])
    else:
        best_perm = []
    return best_perm, autos


def _twins(g: Graph, v: int, w: int) -> bool:
    return g.adj[v] & ~(1 << w) == g.adj[w] & ~(1 << v)


def canon(g: Graph) -> CanonicalForm:
    perm, _ = _search(g)
    cg = g.relabel(perm)
    return CanonicalForm(graph6_encode(cg).decode("ascii"), tuple(perm), cg)


def canonical_graph6(g: Graph) -> str:
    return canon(g).graph6


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.num_edges != b.num_edges or sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return canon(a).graph6 == canon(b).graph6


def find_isomorphism(a: Graph, b: Graph) -> Perm | None:
    """A bijection p with a.relabel(p) == b, or None."""
    if not is_isomorphic(a, b):
        return None
    ca, cb = canon(a), canon(b)
    inv_b = [0] * b.n
    for v, p in enumerate(cb.perm):
        inv_b[p] = v
    return tuple(inv_b[ca.perm[v]] for v in range(a.n))


def iter_automorphisms(g: Graph) -> Iterator[Perm]:
    """All automorphisms, by backtracking inside the cells of the equitable partition."""
    cells = refine(g, [list(range(g.n))])
    colour = [0] * g.n
    for i, cell in enumerate(cells):
        for v in cell:
            colour[v] = i
    image = [-1] * g.n
    used = 0

    def extend(v):
        nonlocal used
        if v == g.n:
            yield tuple(image)
            return
        for w in cells[colour[v]]:
            if used >> w & 1:
                continue
            if g.adj[v].bit_count() != g.adj[w].bit_count():
                continue
            ok = True
            for u in range(v):
                if (g.adj[v] >> u & 1) != (g.adj[w] >> image[u] & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used |= 1 << w
            yield from extend(v + 1)
            used &= ~(1 << w)
            image[v] = -1

    yield from extend(0)


def automorphisms(g: Graph) -> list[Perm]:
    if g.n > 10:
        raise GraphError("automorphism listing is limited to n <= 10")
    return list(iter_automorphisms(g))


def is_automorphism(g: Graph, perm) -> bool:
    if sorted(perm) != list(range(g.n)):
        return False
    return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges())


def compose(p, q) -> Perm:
    """(p o q)(v) = p[q[v]]."""
    return tuple(p[q[v]] for v in range(len(q)))


def inverse(p) -> Perm:
    inv = [0] * len(p)
    for v, w in enumerate(p):
        inv[w] = v
    return tuple(inv)
