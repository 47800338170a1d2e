"""Graph powers, polymorphism search, semiprojections and projectivity verdicts.

Tuples of H^m are encoded most-significant-coordinate-first:
``index(x_1..x_m) = sum x_i * n**(m - i)``, i.e. the order of
``itertools.product(range(n), repeat=m)``. Witness tables are lists in that
order, so they serialize as plain JSON arrays of length n**m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .cores import is_core
from .graphcore import Graph, GraphError, INFINITE, odd_girth
from .homsolver import BudgetExceeded, find_hom, is_homomorphism, iter_homs
from .iso import find_isomorphism, is_isomorphic

POWER_BUDGET = 4096


@dataclass(frozen=True)
class PowerGraph:
    """H^m with vertices indexed as tuples in product order."""

    base: Graph
    m: int
    n: int
    adj: tuple[int, ...] = field(repr=False)

    def tuple_of(self, index: int) -> tuple[int, ...]:
        return decode_tuple(index, self.base.n, self.m)

    def index_of(self, t: Sequence[int]) -> int:
        return encode_tuple(t, self.base.n)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def to_graph(self) -> Graph:
        """As a plain Graph (only for powers with at most 16 vertices)."""
        return Graph(self.n, self.adj)


def encode_tuple(t: Sequence[int], n: int) -> int:
    idx = 0
    for x in t:
        idx = idx * n + x
    return idx


def decode_tuple(index: int, n: int, m: int) -> tuple[int, ...]:
    out = [0] * m
    for i in range(m - 1, -1, -1):
        index, out[i] = divmod(index, n)
    return tuple(out)


def power(h: Graph, m: int, budget: int = POWER_BUDGET) -> PowerGraph:
    if m < 1:
        raise ValueError("power needs m >= 1")
    size = h.n ** m
    if size > budget:
        raise BudgetExceeded(f"{h.n}^{m} = {size} vertices exceeds the budget of {budget}")
    nbrs = [h.neighbors(v) for v in range(h.n)]
    adj = []
    for t in product(range(h.n), repeat=m):
        row = 0
        for s in product(*(nbrs[x] for x in t)):
            row |= 1 << encode_tuple(s, h.n)
        adj.append(row)
    return PowerGraph(h, m, size, tuple(adj))


def cross(a: Graph, b: Graph) -> Graph:
    """Categorical product; (x, y) is vertex x * b.n + y."""
    edges = []
    for x1, x2 in a.edges():
        for y1, y2 in b.edges():
            edges.append((x1 * b.n + y1, x2 * b.n + y2))
            edges.append((x1 * b.n + y2, x2 * b.n + y1))
    return Graph.from_edges(a.n * b.n, edges)


@dataclass(frozen=True)
class Polymorphism:
    n: int
    m: int
    table: tuple[int, ...]

    def __call__(self, *xs: int) -> int:
        return self.table[encode_tuple(xs, self.n)]

    def is_projection(self) -> bool:
        return any(self.table == projection(self.n, self.m, i).table for i in range(self.m))

    def is_idempotent(self) -> bool:
        return all(self(*(x,) * self.m) == x for x in range(self.n))

    def essential_coordinates(self) -> list[int]:
        ess = []
        for i in range(self.m):
            for t in product(range(self.n), repeat=self.m):
                base = self(*t)
                if any(self(*t[:i], y, *t[i + 1:]) != base for y in range(self.n)):
                    ess.append(i)
                    break
        return ess

    def to_json(self) -> dict:
        return {"n": self.n, "arity": self.m, "table": list(self.table)}


def projection(n: int, m: int, i: int) -> Polymorphism:
    return Polymorphism(n, m, tuple(t[i] for t in product(range(n), repeat=m)))


def is_polymorphism(h: Graph, f: Polymorphism) -> bool:
    if f.n != h.n:
        return False
    return is_homomorphism(power(h, f.m, budget=max(POWER_BUDGET, h.n ** f.m)), h, f.table)


def unary_polymorphisms(h: Graph) -> list[tuple[int, ...]]:
    if h.n > 10:
        raise GraphError("endomorphism listing is limited to n <= 10")
    return [tuple(f) for f in iter_homs(h, h)]


def idempotent_pins(n: int, m: int) -> dict[int, int]:
    return {encode_tuple((x,) * m, n): x for x in range(n)}


def _pins_by_index(pins, n: int) -> dict[int, int]:
    if not pins:
        return {}
    out = {}
    for key, val in pins.items():
        out[key if isinstance(key, int) else encode_tuple(key, n)] = val
    return out


def find_polymorphism(
    h: Graph,
    m: int,
    pins: Mapping | None = None,
    forbidden: Polymorphism | Sequence[Polymorphism] | None = None,
    budget: int = POWER_BUDGET,
) -> Polymorphism | None:
    """A homomorphism H^m -> H extending pins and differing from every forbidden table.

    pins map tuples (or tuple indices) to vertices. Raises InconsistentPins if the
    pins already break an edge.
    """
    hp = power(h, m, budget)
    if forbidden is None:
        avoid = []
    elif isinstance(forbidden, Polymorphism):
        avoid = [forbidden.table]
    else:
        avoid = [f.table for f in forbidden]
    f = find_hom(hp, h, _pins_by_index(pins, h.n), avoid=avoid)
    if f is None:
        return None
    return Polymorphism(h.n, m, tuple(f))


def semiprojection_arity_bound(h: Graph) -> int:
    """Arity m such that no semiprojection of arity >= m + 1 exists (core h, n >= 3)."""
    if h.n < 3:
        raise GraphError("the arity bound needs at least 3 vertices")
    delta = min(h.degrees())
    if delta == 0:
        raise GraphError("isolated vertex: minimum degree must be positive")
    return (h.n - 1) // delta + 1


def semiprojection_pins(n: int, m: int, i: int) -> dict[int, int]:
    """Every non-injective tuple pinned to its i-th coordinate."""
    return {
        idx: t[i]
        for idx, t in enumerate(product(range(n), repeat=m))
        if len(set(t)) < m
    }


def is_semiprojection(f: Polymorphism) -> bool:
    if f.is_projection():
        return False
    for i in range(f.m):
        if all(f.table[idx] == x for idx, x in semiprojection_pins(f.n, f.m, i).items()):
            return True
    return False


def find_semiprojection(
    h: Graph, m: int, coordinate: int | None = None, budget: int = POWER_BUDGET
) -> Polymorphism | None:
    """A semiprojection of arity m in Pol(h), or None.

    For each coordinate i the non-injective tuples are pinned to x_i and the solver
    asks for a completion that differs from every projection (at m = 2 the pins
    are just idempotency, which pi_2 satisfies as well as pi_1).
    """
    if m < 2:
        raise ValueError("semiprojections have arity >= 2")
    hp = power(h, m, budget)
    projections = [projection(h.n, m, j).table for j in range(m)]
    coords = range(m) if coordinate is None else [coordinate]
    for i in coords:
        f = find_hom(hp, h, semiprojection_pins(h.n, m, i), avoid=projections)
        if f is not None:
            return Polymorphism(h.n, m, tuple(f))
    return None


# -- decomposability and disconnectedness witnesses ------------------------


def _factor_splits(n: int) -> list[tuple[int, int]]:
    return [(a, n // a) for a in range(2, n) if n % a == 0 and a <= n // a]


def is_decomposable(h: Graph):
    """(True, (A, B, iso)) if h is isomorphic to A x B with both factors on >= 2 vertices.

    iso maps vertices of A x B (encoded x * |B| + y) to vertices of h.
    Returns (False, None) otherwise.
    """
    if h.n > 9:
        raise GraphError("decomposability is only decided for n <= 9")
    from .classify import enumerate_graphs

    for a, b in _factor_splits(h.n):
        for ga in enumerate_graphs(a):
            for gb in enumerate_graphs(b):
                if 2 * ga.num_edges * gb.num_edges != h.num_edges:
                    continue
                prod = cross(ga, gb)
                if is_isomorphic(prod, h):
                    return True, (ga, gb, find_isomorphism(prod, h))
    return False, None


def decomposition_witness(h: Graph, a: Graph, b: Graph, iso: Sequence[int]) -> Polymorphism:
    """The binary map ((x1,x2),(y1,y2)) -> (x1,y2), transported to h through iso."""
    inv = [0] * h.n
    for p, v in enumerate(iso):
        inv[v] = p
    table = []
    for u, w in product(range(h.n), repeat=2):
        x1 = inv[u] // b.n
        y2 = inv[w] % b.n
        table.append(iso[x1 * b.n + y2])
    return Polymorphism(h.n, 2, tuple(table))


def disconnected_witness(h: Graph) -> Polymorphism:
    """pi_1 on rows whose first argument lies in the first component, pi_2 elsewhere."""
    comps = h.components()
    if len(comps) < 2:
        raise GraphError("graph is connected")
    first = set(comps[0])
    table = tuple(x if x in first else y for x, y in product(range(h.n), repeat=2))
    return Polymorphism(h.n, 2, table)


# -- projectivity ----------------------------------------------------------


@dataclass
class ProjectivityVerdict:
    status: str  # projective | not-projective | not-applicable | undetermined
    reason: str
    certificates: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"status": self.status, "reason": self.reason, "certificates": self.certificates}


def _pp_certificates(h: Graph) -> list[dict]:
    from .relations import Relation, matching_templates, neq_pp_template, pp_evaluate

    certs = []
    neq = Relation.neq(h.n)
    for name, param in matching_templates(h):
        formula = neq_pp_template(name, param)
        rel = pp_evaluate(formula, h)
        certs.append(
            {
                "route": "pp-definition",
                "template": name,
                "param": param,
                "formula": str(formula),
                "defines_neq": rel == neq,
            }
        )
    return certs


def _semiprojection_certificate(h: Graph, budget: int = POWER_BUDGET) -> dict | None:
    bound = semiprojection_arity_bound(h)
    if h.n ** bound > budget:
        return None
    checked = []
    for m in range(2, bound + 1):
        for i in range(m):
            f = find_semiprojection(h, m, coordinate=i, budget=budget)
            if f is not None:
                return {
                    "route": "semiprojection",
                    "arity_bound": bound,
                    "checked": checked,
                    "witness": {"arity": m, "coordinate": i, **f.to_json()},
                }
            checked.append({"arity": m, "coordinate": i, "completion": None})
    return {"route": "semiprojection", "arity_bound": bound, "checked": checked, "witness": None}


def is_projective(h: Graph, all_routes: bool = False, budget: int = POWER_BUDGET) -> ProjectivityVerdict:
    """Projectivity verdict with certificates; never guesses.

    Routes, in order: applicability (core, >= 3 vertices, non-bipartite),
    structural obstructions (disconnected, decomposable), bundled NEQ
    pp-definitions, then semiprojection exclusion up to the arity bound.
    With all_routes=True every applicable positive route runs and they must agree.
    budget caps |V_H|^m for the semiprojection route.
    """
    if h.n < 3:
        return ProjectivityVerdict("not-applicable", "fewer than 3 vertices")
    if odd_girth(h) is INFINITE:
        return ProjectivityVerdict("not-applicable", "bipartite")
    if not is_core(h):
        return ProjectivityVerdict("not-applicable", "not a core")

    if not h.is_connected():
        f = disconnected_witness(h)
        assert is_polymorphism(h, f) and f.is_idempotent() and not f.is_projection()
        cert = {"route": "disconnected", "components": h.components(), "witness": f.to_json()}
        return ProjectivityVerdict("not-projective", "disconnected core", [cert])
    if h.n <= 9:
        dec, parts = is_decomposable(h)
        if dec:
            a, b, iso = parts
            f = decomposition_witness(h, a, b, iso)
            assert is_polymorphism(h, f) and f.is_idempotent() and not f.is_projection()
            cert = {
                "route": "decomposable",
                "factors": [str(a), str(b)],
                "witness": f.to_json(),
            }
            return ProjectivityVerdict("not-projective", "decomposable core", [cert])

    certs = [c for c in _pp_certificates(h) if c["defines_neq"]]
    if certs and not all_routes:
        return ProjectivityVerdict("projective", "E_H pp-defines NEQ", certs)

    semi = _semiprojection_certificate(h, budget)
    if semi is not None:
        certs.append(semi)
        if semi["witness"] is not None:
            if any(c["route"] == "pp-definition" for c in certs):
                raise AssertionError(f"projectivity routes disagree on {h}")
            return ProjectivityVerdict("not-projective", "semiprojection found", certs)
        return ProjectivityVerdict("projective", "no semiprojection up to the arity bound", certs)
    if certs:
        return ProjectivityVerdict("projective", "E_H pp-defines NEQ", certs)
    return ProjectivityVerdict("undetermined", "no template applies and the power exceeds the search budget")
