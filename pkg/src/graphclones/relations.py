"""Finite relations, pp/qfpp formulas, walls, and the odd-cycle constructions.

Relation text format: a header line ``k n`` (domain size, arity) followed by
one tuple per line as space-separated integers. Matrix (wall) format: a header
``rows cols`` followed by the rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .graphcore import Graph, INFINITE, add_universal, clique, complement, cycle, iter_bits, named, odd_girth
from .homsolver import BudgetExceeded, InconsistentPins, find_hom
from .iso import is_isomorphic


@dataclass(frozen=True)
class Relation:
    k: int
    arity: int
    tuples: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for t in self.tuples:
            if len(t) != self.arity or any(not 0 <= x < self.k for x in t):
                raise ValueError(f"tuple {t} does not fit domain {self.k} / arity {self.arity}")

    @classmethod
    def of(cls, k: int, arity: int, tuples: Iterable[Sequence[int]]) -> "Relation":
        return cls(k, arity, tuple(sorted({tuple(t) for t in tuples})))

    @classmethod
    def from_graph(cls, h: Graph) -> "Relation":
        return cls.of(h.n, 2, [(u, v) for u in range(h.n) for v in iter_bits(h.adj[u])])

    @classmethod
    def neq(cls, k: int) -> "Relation":
        return cls.of(k, 2, [(x, y) for x in range(k) for y in range(k) if x != y])

    @classmethod
    def eq(cls, k: int) -> "Relation":
        return cls.of(k, 2, [(x, x) for x in range(k)])

    def __contains__(self, t) -> bool:
        return tuple(t) in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.tuples)
            object.__setattr__(self, "_cached_set", s)
        return s

    def __len__(self) -> int:
        return len(self.tuples)

    def dumps(self) -> str:
        lines = [f"{self.k} {self.arity}"] + [" ".join(map(str, t)) for t in self.tuples]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Relation":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not rows or len(rows[0]) != 2:
            raise ValueError("relation file must start with a header 'k n'")
        k, arity = map(int, rows[0])
        return cls.of(k, arity, [tuple(map(int, r)) for r in rows[1:]])


def dump_matrix(rows: Sequence[Sequence[int]]) -> str:
    cols = len(rows[0]) if rows else 0
    return "\n".join([f"{len(rows)} {cols}"] + [" ".join(map(str, r)) for r in rows]) + "\n"


def load_matrix(text: str) -> list[list[int]]:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("matrix file must start with a header 'rows cols'")
    nr, nc = map(int, rows[0])
    body = [list(map(int, r)) for r in rows[1:]]
    if len(body) != nr or any(len(r) != nc for r in body):
        raise ValueError(f"matrix body does not match header {nr}x{nc}")
    return body


# -- pp formulas -----------------------------------------------------------


@dataclass(frozen=True)
class PPFormula:
    """exists x_n..x_{n+n'-1}: conjunction of Edge(i, j) / Eq(i, j) atoms.

    Variables 0..n_free-1 are free, the rest existential.
    """

    n_free: int
    n_exist: int
    atoms: tuple[tuple[str, int, int], ...]

    def __post_init__(self):
        total = self.n_free + self.n_exist
        for kind, i, j in self.atoms:
            if kind not in ("E", "="):
                raise ValueError(f"unknown atom kind {kind!r}")
            if not (0 <= i < total and 0 <= j < total):
                raise ValueError(f"atom {kind}({i},{j}) uses an unknown variable")

    @property
    def is_qf(self) -> bool:
        return self.n_exist == 0

    def __str__(self) -> str:
        def name(i):
            return f"x{i}" if i < self.n_free else f"y{i - self.n_free}"

        body = " & ".join(
            f"E({name(i)},{name(j)})" if kind == "E" else f"{name(i)}={name(j)}"
            for kind, i, j in self.atoms
        )
        free = ",".join(name(i) for i in range(self.n_free))
        if self.n_exist:
            ex = ",".join(name(i) for i in range(self.n_free, self.n_free + self.n_exist))
            return f"R({free}) := exists {ex}: {body}"
        return f"R({free}) := {body}"


def _pattern(formula: PPFormula):
    """Merge Eq atoms; return (variable -> class, pattern graph edges, has_loop)."""
    total = formula.n_free + formula.n_exist
    parent = list(range(total))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for kind, i, j in formula.atoms:
        if kind == "=":
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    roots = sorted({find(v) for v in range(total)})
    cls = {r: c for c, r in enumerate(roots)}
    var_class = [cls[find(v)] for v in range(total)]
    edges = set()
    loop = False
    for kind, i, j in formula.atoms:
        if kind == "E":
            a, b = var_class[i], var_class[j]
            if a == b:
                loop = True
            else:
                edges.add((min(a, b), max(a, b)))
    return var_class, len(roots), sorted(edges), loop


class _Pattern:
    # a bare (n, adj) structure; the solver only reads these two fields
    def __init__(self, n: int, edges):
        rows = [0] * n
        for a, b in edges:
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        self.n = n
        self.adj = tuple(rows)


def pp_evaluate(formula: PPFormula, h: Graph, budget: int = 10**7) -> Relation:
    """The relation defined by formula over E_h.

    Each free assignment is pinned into the pattern graph of the formula and the
    existential part is decided by the homomorphism solver, stopping at the
    first witness. The budget bounds the number of free assignments; the
    existential part is never enumerated as a whole.
    """
    n = formula.n_free
    if h.n ** n > budget:
        raise BudgetExceeded(f"{h.n}^{n} free assignments exceed the budget of {budget}")
    var_class, ncls, edges, loop = _pattern(formula)
    if loop:
        return Relation.of(h.n, n, [])
    if formula.n_exist == 0:
        out = [
            t for t in product(range(h.n), repeat=n)
            if all(h.has_edge(t[i], t[j]) if kind == "E" else t[i] == t[j] for kind, i, j in formula.atoms)
        ]
        return Relation.of(h.n, n, out)
    pattern = _Pattern(ncls, edges)
    out = []
    for t in product(range(h.n), repeat=n):
        pins: dict[int, int] = {}
        clash = False
        for v, x in enumerate(t):
            c = var_class[v]
            if pins.setdefault(c, x) != x:
                clash = True
                break
        if clash:
            continue
        try:
            if find_hom(pattern, h, pins) is not None:
                out.append(t)
        except InconsistentPins:
            continue
    return Relation.of(h.n, n, out)


# -- qfpp definability -----------------------------------------------------


def implied_atoms(r: Relation, base: Relation) -> list[tuple[str, tuple[int, ...]]]:
    """All atoms over r's variables (base atoms and equalities) that contain r."""
    atoms = []
    for idx in product(range(r.arity), repeat=base.arity):
        if all(tuple(t[i] for i in idx) in base for t in r.tuples):
            atoms.append(("R", idx))
    for i, j in combinations(range(r.arity), 2):
        if all(t[i] == t[j] for t in r.tuples):
            atoms.append(("=", (i, j)))
    return atoms


def atom_closure_size(r: Relation, base: Relation, atoms, stop_above: int | None = None) -> int:
    """Number of tuples satisfying every atom, counted by backtracking."""
    n = r.arity
    by_last: list[list] = [[] for _ in range(n)]
    for kind, idx in atoms:
        if idx:
            by_last[max(idx)].append((kind, idx))
        elif kind == "R" and () not in base:
            return 0
    assign = [0] * n
    count = 0

    def ok(kind, idx):
        if kind == "=":
            return assign[idx[0]] == assign[idx[1]]
        return tuple(assign[i] for i in idx) in base

    def rec(v):
        nonlocal count
        if stop_above is not None and count > stop_above:
            return
        if v == n:
            count += 1
            return
        for x in range(r.k):
            assign[v] = x
            if all(ok(kind, idx) for kind, idx in by_last[v]):
                rec(v + 1)

    rec(0)
    return count


def qfpp_definable(r: Relation, base: Graph | Relation) -> bool:
    """Whether r is an intersection of atoms over base (and equality) on its own variables."""
    if isinstance(base, Graph):
        base = Relation.from_graph(base)
    if r.k != base.k:
        raise ValueError("relations must share the domain")
    atoms = implied_atoms(r, base)
    return atom_closure_size(r, base, atoms, stop_above=len(r)) == len(r)


def qfpp_definition(r: Relation, base: Graph | Relation) -> PPFormula | None:
    """The closure formula (all implied atoms) when it defines r; base must be binary."""
    if isinstance(base, Graph):
        base = Relation.from_graph(base)
    if base.arity != 2:
        raise ValueError("formula output only supports binary base relations")
    if not qfpp_definable(r, base):
        return None
    atoms = tuple(("E" if kind == "R" else "=", idx[0], idx[1]) for kind, idx in implied_atoms(r, base))
    return PPFormula(r.arity, 0, atoms)


# -- odd-cycle constructions ----------------------------------------------


def closed_walks(h: Graph, k: int) -> list[tuple[int, ...]]:
    """All (x_1..x_k) with every cyclically consecutive pair an edge."""
    out = []

    def rec(seq):
        if len(seq) == k:
            if h.has_edge(seq[-1], seq[0]):
                out.append(tuple(seq))
            return
        for w in iter_bits(h.adj[seq[-1]]):
            seq.append(w)
            rec(seq)
            seq.pop()

    if k == 1:
        return []
    for s in range(h.n):
        rec([s])
    return sorted(out)


def cycle_relation(h: Graph, k: int, n: int) -> Relation:
    """E(x1,x2) & ... & E(x_k,x1) as an n-ary relation; x_{k+1}..x_n are free."""
    if k % 2 == 0:
        raise ValueError("cycle length must be odd")
    if k > n:
        raise ValueError("cycle length exceeds the arity")
    heads = closed_walks(h, k)
    tails = list(product(range(h.n), repeat=n - k))
    return Relation.of(h.n, n, [w + t for w in heads for t in tails])


def cycle_formula(k: int, n: int) -> PPFormula:
    return PPFormula(n, 0, tuple(("E", i, (i + 1) % k) for i in range(k)))


_odd_girth = lru_cache(maxsize=64)(odd_girth)


def induced_kcycle_check(h: Graph, xs: Sequence[int]) -> bool:
    """Consecutive-cyclic edge test; for len(xs) = og(h) this is exactly 'induces a k-cycle'."""
    og = _odd_girth(h)
    if og is INFINITE or len(xs) != og:
        raise ValueError(f"tuple length must equal the odd girth ({og})")
    k = len(xs)
    return all(h.has_edge(xs[i], xs[(i + 1) % k]) for i in range(k))


def cycle_edge_subgraph(h: Graph, k: int) -> Graph:
    """Keep exactly the edges that lie on a (simple) cycle of length k."""
    keep = []
    for u, v in h.edges():
        if _on_k_cycle(h, u, v, k):
            keep.append((u, v))
    return Graph.from_edges(h.n, keep)


def _on_k_cycle(h: Graph, u: int, v: int, k: int) -> bool:
    # simple path v -> ... -> u with k vertices, avoiding the edge itself
    if k < 3:
        return False

    def rec(x, used, length):
        if length == k:
            return x == u
        nbrs = h.adj[x] & ~used
        if length < k - 1:
            nbrs &= ~(1 << u)
        for w in iter_bits(nbrs):
            if length == k - 1 and w != u:
                continue
            if rec(w, used | (1 << w), length + 1):
                return True
        return False

    return rec(v, 1 << v, 1)


# -- partial polymorphisms and walls --------------------------------------


def is_partial_polymorphism(f: Mapping[tuple[int, ...], int], r: Relation) -> bool:
    """Every n x m matrix with columns in r and rows in dom(f) maps to a column in r."""
    if not f:
        return True
    arities = {len(t) for t in f}
    if len(arities) != 1:
        raise ValueError("partial map must have a single arity")
    (m,) = arities
    prefixes = [set() for _ in range(m + 1)]
    for t in f:
        for j in range(m + 1):
            prefixes[j].add(t[:j])
    n = r.arity
    rows: list[tuple[int, ...]] = [()] * n

    def rec(j):
        if j == m:
            return tuple(f[row] for row in rows) in r
        for col in r.tuples:
            ext = [rows[i] + (col[i],) for i in range(n)]
            if all(e in prefixes[j + 1] for e in ext):
                saved = list(rows)
                rows[:] = ext
                if not rec(j + 1):
                    return False
                rows[:] = saved
        return True

    return rec(0)


def constant_map(domain: Iterable[tuple[int, ...]], a: int) -> dict[tuple[int, ...], int]:
    return {tuple(t): a for t in domain}


def check_wall(matrix: Sequence[Sequence[int]], r: Relation, h: Graph) -> bool:
    if len(matrix) != r.arity:
        raise ValueError(f"wall has {len(matrix)} rows but the relation has arity {r.arity}")
    widths = {len(row) for row in matrix}
    if len(widths) != 1 or 0 in widths:
        raise ValueError("wall rows must be non-empty and of equal length")
    (m,) = widths
    for j in range(m):
        if tuple(row[j] for row in matrix) not in r:
            return False
    for a, b in product(range(r.arity), repeat=2):
        if all(h.has_edge(matrix[a][j], matrix[b][j]) for j in range(m)):
            return False
    return True


def pairwise_wall(r: Relation, h: Graph) -> list[list[int]] | None:
    """One column per pair i < i' taken from r with a non-edge at (i, i'); None if some pair has none."""
    n = r.arity
    if not r.tuples:
        return None
    cols = []
    for i, j in combinations(range(n), 2):
        col = next((t for t in r.tuples if not h.has_edge(t[i], t[j])), None)
        if col is None:
            return None
        cols.append(col)
    if not cols:
        cols.append(r.tuples[0])
    return [[c[i] for c in cols] for i in range(n)]


def triviality_witness(matrix: Sequence[Sequence[int]], r: Relation, h: Graph) -> int | None:
    """A vertex a whose constant map on the wall's rows preserves r; then (a,...,a) is in r."""
    if not check_wall(matrix, r, h):
        raise ValueError("matrix is not an R-wall for this graph")
    rows = [tuple(row) for row in matrix]
    for a in range(h.n):
        if is_partial_polymorphism(constant_map(rows, a), r):
            assert (a,) * r.arity in r
            return a
    return None


def bipartition_pattern(r: Relation, h: Graph) -> tuple[int, ...]:
    """Side (0 = A, 1 = B) of each coordinate of r's first tuple in a 2-colouring of the vertices it uses.

    Preconditions: og(h) > arity, r non-empty, r implies E(x1, x2).
    """
    if not r.tuples:
        raise ValueError("relation is empty")
    og = odd_girth(h)
    if og is not INFINITE and og <= r.arity:
        raise ValueError("needs odd girth larger than the arity")
    a = r.tuples[0]
    vs = sorted(set(a))
    side: dict[int, int] = {}
    for s in vs:
        if s in side:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in vs:
                if h.has_edge(x, y):
                    if y not in side:
                        side[y] = 1 - side[x]
                        stack.append(y)
                    elif side[y] == side[x]:
                        raise AssertionError("odd cycle below the odd girth")
    return tuple(side[x] for x in a)


def pattern_relation(r: Relation, pattern: Sequence[int]) -> Relation:
    """{(x, y) : r holds at the tuple with x on side-0 coordinates and y on side-1 ones}."""
    out = []
    for x, y in product(range(r.k), repeat=2):
        t = tuple(x if p == 0 else y for p in pattern)
        if t in r:
            out.append((x, y))
    return Relation.of(r.k, 2, out)


# -- NEQ templates ---------------------------------------------------------

TEMPLATES = ("clique", "odd_cycle", "three_walk", "complement_cycle", "c5_plus")


def _walk_formula(length: int) -> PPFormula:
    """exists interior vertices: a walk with `length` edges from x0 to x1."""
    chain = [0] + list(range(2, length + 1)) + [1]
    atoms = tuple(("E", chain[i], chain[i + 1]) for i in range(length))
    return PPFormula(2, length - 1, atoms)


def _path_plus_clique(extra: int) -> PPFormula:
    # free x1 -> 0, x4 -> 1; existential x2 -> 2, x3 -> 3, w_j -> 4 + j
    xs = [0, 2, 3, 1]
    ws = [4 + j for j in range(extra)]
    atoms = [("E", xs[i], xs[i + 1]) for i in range(3)]
    atoms += [("E", x, w) for x in xs for w in ws]
    atoms += [("E", a, b) for a, b in combinations(ws, 2)]
    return PPFormula(2, 2 + extra, tuple(atoms))


def neq_pp_template(name: str, param: int | None = None) -> PPFormula:
    if name == "clique":
        return PPFormula(2, 0, (("E", 0, 1),))
    if name == "odd_cycle":
        if param is None or param < 3 or param % 2 == 0:
            raise ValueError("odd_cycle needs an odd length >= 3")
        return _walk_formula(param - 2)
    if name in ("three_walk", "grotzsch", "petersen"):
        return _walk_formula(3)
    if name == "complement_cycle":
        if param is None or param < 3:
            raise ValueError("complement_cycle needs p >= 3 (the complement of C_{2p+1})")
        return _path_plus_clique(param - 2)
    if name == "c5_plus":
        if param is None or param < 0:
            raise ValueError("c5_plus needs p >= 0")
        return _path_plus_clique(param)
    raise ValueError(f"unknown template {name!r}; known: {', '.join(TEMPLATES)}")


def template_graph(name: str, param: int | None = None) -> Graph:
    """The graph family member the template is stated for."""
    if name == "clique":
        return clique(param)
    if name == "odd_cycle":
        return cycle(param)
    if name in ("grotzsch", "petersen"):
        return named(name)
    if name == "complement_cycle":
        return complement(cycle(2 * param + 1))
    if name == "c5_plus":
        return add_universal(cycle(5), param)
    raise ValueError(f"template {name!r} has no single family graph")


def matching_templates(h: Graph) -> list[tuple[str, int | None]]:
    """Templates whose family graph is isomorphic to h."""
    cands: list[tuple[str, int | None]] = []
    if h.n >= 3:
        cands.append(("clique", h.n))
    if h.n >= 3 and h.n % 2 == 1:
        cands.append(("odd_cycle", h.n))
        if h.n >= 7:
            cands.append(("complement_cycle", (h.n - 1) // 2))
    if h.n >= 5:
        cands.append(("c5_plus", h.n - 5))
    if h.n == 11:
        cands.append(("grotzsch", None))
    if h.n == 10:
        cands.append(("petersen", None))
    return [c for c in cands if is_isomorphic(template_graph(*c), h)]
