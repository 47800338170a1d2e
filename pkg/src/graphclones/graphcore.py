"""Simple undirected graphs on vertices 0..n-1, stored as adjacency bit rows.

Also holds the constructors for the named graphs used throughout the package
and the two text formats (graph6 and a plain edge list).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 16


class GraphError(ValueError):
    """Raised for malformed graphs or unparsable graph text."""


class _Infinity:
    """Odd-girth of a bipartite graph. Deliberately not an int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    def __str__(self) -> str:
        return "inf"


INFINITE = _Infinity()


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} points outside the vertex range")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed to perm[v]."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling must be a permutation of the vertices")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def components(self) -> list[list[int]]:
        left = (1 << self.n) - 1
        out = []
        while left:
            start = left & -left
            seen = frontier = start
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~seen
                seen |= frontier
            out.append(list(iter_bits(seen)))
            left &= ~seen
        return out

    def is_bipartite(self) -> bool:
        return odd_girth(self) is INFINITE

    def __str__(self) -> str:
        return graph6_encode(self).decode("ascii")


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


# -- constructors ---------------------------------------------------------


def clique(k: int) -> Graph:
    if k < 0:
        raise GraphError("clique size must be non-negative")
    return Graph.from_edges(k, combinations(range(k), 2))


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(k, ((i, (i + 1) % k) for i in range(k)))


def path(k: int) -> Graph:
    return Graph.from_edges(k, ((i, i + 1) for i in range(k - 1)))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def disjoint_union(a: Graph, b: Graph) -> Graph:
    shifted = ((u + a.n, v + a.n) for u, v in b.edges())
    return Graph.from_edges(a.n + b.n, [*a.edges(), *shifted])


def add_universal(g: Graph, p: int) -> Graph:
    """Join of g with K_p: p new mutually adjacent vertices adjacent to everything."""
    h = disjoint_union(g, clique(p))
    extra = [(u, g.n + j) for u in range(g.n) for j in range(p)]
    return Graph.from_edges(h.n, [*h.edges(), *extra])


def induced(g: Graph, s: int | Iterable[int]) -> Graph:
    """Subgraph induced by a vertex set (bitmask or iterable), relabelled in order."""
    vs = list(iter_bits(s)) if isinstance(s, int) else sorted(set(s))
    if any(not 0 <= v < g.n for v in vs):
        raise GraphError("vertex set leaves the vertex range")
    pos = {v: i for i, v in enumerate(vs)}
    return Graph.from_edges(
        len(vs), ((pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos)
    )


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced(g, ((1 << g.n) - 1) & ~(1 << v))


# Vertex orders for the bundled drawings:
#   grotzsch: outer rim v1..v5 -> 0..4, inner v1'..v5' -> 5..9, hub u -> 10
#   petersen: outer rim v1..v5 -> 0..4, inner v1'..v5' -> 5..9
#   g1:       rim v1..v5 -> 0..4, u -> 5, v -> 6
#   g2..g6:   a, b, c, d, e, u, v -> 0..6 (a..e is the induced 5-cycle)
_A, _B, _C, _D, _E, _U, _V = range(7)
_MOTIF = [(_A, _B), (_B, _C), (_C, _D), (_D, _E), (_E, _A), (_U, _A), (_U, _B), (_V, _A), (_V, _E)]

_NAMED_EDGES = {
    "grotzsch": (
        11,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
        + [(5, 1), (5, 4), (6, 0), (6, 2), (7, 1), (7, 3), (8, 2), (8, 4), (9, 0), (9, 3)]
        + [(10, i) for i in range(5, 10)],
    ),
    "petersen": (
        10,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
        + [(i, i + 5) for i in range(5)]
        + [(7, 5), (8, 5), (8, 6), (9, 6), (9, 7)],
    ),
    "g1": (7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 3), (5, 4), (6, 0), (6, 1), (6, 2)]),
    "g2": (7, _MOTIF + [(_C, _U), (_C, _V), (_D, _V)]),
    "g3": (7, _MOTIF + [(_C, _U), (_C, _V), (_D, _U), (_D, _V)]),
    "g4": (7, _MOTIF + [(_U, _V), (_C, _U), (_D, _V)]),
    "g5": (7, _MOTIF + [(_E, _U), (_C, _V), (_D, _U)]),
    "g6": (7, _MOTIF + [(_E, _U), (_C, _V), (_D, _U), (_D, _V)]),
}

NAMED_GRAPHS = tuple(sorted([*_NAMED_EDGES, "c5p1", "c5p2"]))
SPORADIC_7_CORES = ("g1", "g2", "g3", "g4", "g5", "g6")


def named(name: str) -> Graph:
    key = name.lower().replace("ö", "o").replace("_", "").replace("+", "p")
    if key in _NAMED_EDGES:
        n, edges = _NAMED_EDGES[key]
        return Graph.from_edges(n, edges)
    if key in ("c5p1", "c5p2"):
        return add_universal(cycle(5), int(key[-1]))
    raise GraphError(f"unknown named graph {name!r}; known: {', '.join(NAMED_GRAPHS)}")


def motif_graph(extra: Iterable[str]) -> Graph:
    """The case-analysis motif (a..e 5-cycle, u~a,b, v~a,e) plus extra edges like 'cu'."""
    letters = dict(zip("abcdeuv", range(7)))
    return Graph.from_edges(7, _MOTIF + [(letters[p[0]], letters[p[1]]) for p in extra])


# -- structural queries ---------------------------------------------------


def odd_girth(g: Graph):
    """Length of a shortest odd cycle, or INFINITE for bipartite graphs.

    BFS over (vertex, parity) states: the shortest odd closed walk through any
    vertex has the length of a shortest odd cycle, and a shortest odd cycle is
    always induced.
    """
    best = None
    for s in range(g.n):
        dist = {(s, 0): 0}
        queue = deque([(s, 0)])
        while queue:
            v, p = queue.popleft()
            d = dist[(v, p)]
            if best is not None and d + 1 >= best:
                break
            for w in iter_bits(g.adj[v]):
                state = (w, p ^ 1)
                if state not in dist:
                    dist[state] = d + 1
                    queue.append(state)
        if (s, 1) in dist and (best is None or dist[(s, 1)] < best):
            best = dist[(s, 1)]
    return INFINITE if best is None else best


def is_induced_cycle(g: Graph, order: Sequence[int]) -> bool:
    """True iff the listed distinct vertices, in this cyclic order, induce exactly a cycle."""
    k = len(order)
    if k < 3 or len(set(order)) != k:
        return False
    sub = 0
    for v in order:
        sub |= 1 << v
    for i, v in enumerate(order):
        want = (1 << order[i - 1]) | (1 << order[(i + 1) % k])
        if g.adj[v] & sub != want:
            return False
    return True


def has_induced_cycle_on(g: Graph, vs: Sequence[int]) -> bool:
    """Whether the vertex set vs induces a cycle (in some order)."""
    h = induced(g, vs)
    return len(vs) >= 3 and all(d == 2 for d in h.degrees()) and h.is_connected()


def max_clique_size(g: Graph) -> int:
    best = 0

    def grow(size: int, cand: int):
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + popcount(cand) <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            grow(size + 1, cand & g.adj[v])

    grow(0, (1 << g.n) - 1)
    return best


# -- text formats ---------------------------------------------------------


def _upper_bits(g: Graph) -> Iterator[int]:
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            yield row >> i & 1


def graph6_encode(g: Graph) -> bytes:
    if g.n > 62:
        raise GraphError("graph6 short form only covers n <= 62")
    out = bytearray([g.n + 63])
    group = nbits = 0
    for bit in _upper_bits(g):
        group = group << 1 | bit
        nbits += 1
        if nbits == 6:
            out.append(group + 63)
            group = nbits = 0
    if nbits:
        out.append((group << (6 - nbits)) + 63)
    return bytes(out)


def graph6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise GraphError("empty graph6 string")
    for byte in data:
        if not 63 <= byte <= 126:
            raise GraphError(f"byte {byte} outside the graph6 range 63..126")
    n = data[0] - 63
    if n >= 63:
        raise GraphError("only graph6 strings with n < 63 are supported")
    nbits = n * (n - 1) // 2
    ngroups = (nbits + 5) // 6
    if len(data) != 1 + ngroups:
        raise GraphError(f"graph6 string for n={n} needs {1 + ngroups} bytes, got {len(data)}")
    bits = []
    for byte in data[1:]:
        x = byte - 63
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphError("nonzero padding bits in graph6 string")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def edgelist_encode(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def edgelist_decode(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with a line 'n m'")
    try:
        n, m = (int(t) for t in rows[0])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"bad edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header promises {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)
