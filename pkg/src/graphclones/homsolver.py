"""Backtracking search for homomorphisms G -> H.

Domains are bitmasks over the target vertices. Propagation is AC-3 on the
single binary edge constraint: a source vertex u keeps candidate a only if a
has a neighbour among the candidates of every neighbour of u. Branching picks
the smallest domain (lowest index on ties) and tries values in ascending order,
so identical inputs always give the identical witness.

Sources and targets are anything with ``n`` and ``adj`` (bit rows), which lets
graph powers with thousands of vertices go through the same engine.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .graphcore import clique, iter_bits


class InconsistentPins(ValueError):
    """The pinned partial map already violates an edge or the target range."""


class BudgetExceeded(RuntimeError):
    pass


PartialMap = Mapping[int, int]


class _Problem:
    def __init__(self, g, h):
        self.g = g
        self.h = h
        self.gnbrs = [list(iter_bits(row)) for row in g.adj]
        self.hadj = h.adj
        self.full = (1 << h.n) - 1
        self._support: dict[int, int] = {}
        self.nodes = 0

    def support(self, dom: int) -> int:
        """Union of the neighbourhoods of the target vertices in dom."""
        s = self._support.get(dom)
        if s is None:
            s = 0
            for b in iter_bits(dom):
                s |= self.hadj[b]
            self._support[dom] = s
        return s

    def propagate(self, dom: list[int], queue: Iterable[int]) -> bool:
        pending = list(queue)
        inq = set(pending)
        gn = self.gnbrs
        while pending:
            v = pending.pop()
            inq.discard(v)
            sup = self.support(dom[v])
            for u in gn[v]:
                du = dom[u]
                nd = du & sup
                if nd != du:
                    if not nd:
                        return False
                    dom[u] = nd
                    if u not in inq:
                        inq.add(u)
                        pending.append(u)
        return True

    def pick(self, dom: list[int]) -> int:
        best, best_size = -1, 1 << 30
        for v, d in enumerate(dom):
            if d & (d - 1):
                size = d.bit_count()
                if size < best_size:
                    best, best_size = v, size
                    if size == 2:
                        break
        return best

    def solutions(self, dom: list[int], budget: int | None = None):
        """Yield every total assignment (as a list) below the AC-closed store dom."""
        stack = [dom]
        while stack:
            cur = stack.pop()
            self.nodes += 1
            if budget is not None and self.nodes > budget:
                raise BudgetExceeded(f"search exceeded {budget} nodes")
            v = self.pick(cur)
            if v < 0:
                yield [d.bit_length() - 1 for d in cur]
                continue
            children = []
            for a in iter_bits(cur[v]):
                child = list(cur)
                child[v] = 1 << a
                if self.propagate(child, (v,)):
                    children.append(child)
            stack.extend(reversed(children))

    def first(self, dom: list[int], budget: int | None = None):
        return next(self.solutions(dom, budget), None)

    def first_avoiding(self, dom: list[int], avoid: Sequence[Sequence[int]], budget=None):
        """First solution that differs from every table in avoid somewhere.

        For the first table f still compatible with dom, split the remaining space
        into disjoint branches: x_j != f(j) with x_i = f(i) for every earlier i.
        """
        n = len(dom)
        live = [f for f in avoid if all(dom[v] >> f[v] & 1 for v in range(n))]
        if not live:
            return self.first(dom, budget)
        f, rest = live[0], live[1:]
        prefix = list(dom)
        for j in range(n):
            bit = 1 << f[j]
            if prefix[j] == bit:
                continue
            branch = list(prefix)
            branch[j] &= ~bit
            if self.propagate(branch, (j,)):
                found = self.first_avoiding(branch, rest, budget)
                if found is not None:
                    return found
            prefix[j] = bit
            if not self.propagate(prefix, (j,)):
                return None
        return None


def _initial_domains(prob: _Problem, pins: PartialMap | Sequence[int | None] | None) -> list[int]:
    g, h = prob.g, prob.h
    dom = [prob.full] * g.n
    items = _pin_items(pins)
    for v, a in items:
        if not 0 <= v < g.n:
            raise InconsistentPins(f"pinned source vertex {v} out of range")
        if not 0 <= a < h.n:
            raise InconsistentPins(f"pin {v}->{a} leaves the target vertex range")
        dom[v] = 1 << a
    pinned = dict(items)
    for v, a in items:
        for u in iter_bits(g.adj[v]):
            b = pinned.get(u)
            if b is not None and not h.adj[a] >> b & 1:
                raise InconsistentPins(f"edge {v}-{u} pinned onto non-edge {a}-{b}")
    return dom


def _pin_items(pins) -> list[tuple[int, int]]:
    if pins is None:
        return []
    if isinstance(pins, Mapping):
        return sorted((int(v), int(a)) for v, a in pins.items())
    return [(v, a) for v, a in enumerate(pins) if a is not None]


def is_homomorphism(g, h, f: Sequence[int]) -> bool:
    if len(f) != g.n or any(not 0 <= a < h.n for a in f):
        return False
    for v in range(g.n):
        row = h.adj[f[v]]
        for u in iter_bits(g.adj[v]):
            if not row >> f[u] & 1:
                return False
    return True


def _checked(g, h, f, pins):
    if f is None:
        return None
    if not is_homomorphism(g, h, f):
        raise AssertionError("solver produced a non-homomorphism")
    for v, a in _pin_items(pins):
        if f[v] != a:
            raise AssertionError("solver ignored a pin")
    return f


def find_hom(g, h, pins=None, avoid: Sequence[Sequence[int]] = (), budget: int | None = None):
    """A homomorphism g -> h extending pins (and differing from each table in avoid), or None.

    Raises InconsistentPins when the pins themselves break an edge.
    """
    prob = _Problem(g, h)
    dom = _initial_domains(prob, pins)
    if g.n == 0:
        return [] if not avoid else None
    if h.n == 0:
        return None
    if not prob.propagate(dom, range(g.n)):
        return None
    if avoid:
        f = prob.first_avoiding(dom, [list(t) for t in avoid], budget)
    else:
        f = prob.first(dom, budget)
    return _checked(g, h, f, pins)


def iter_homs(g, h, pins=None, budget: int | None = None):
    prob = _Problem(g, h)
    dom = _initial_domains(prob, pins)
    if g.n == 0:
        yield []
        return
    if h.n == 0:
        return
    if not prob.propagate(dom, range(g.n)):
        return
    for f in prob.solutions(dom, budget):
        yield _checked(g, h, f, pins)


def count_homs(g, h, budget: int = 10**7) -> int:
    """Exact number of homomorphisms, by exhaustive search under a node budget."""
    return sum(1 for _ in iter_homs(g, h, budget=budget))


def exists_hom(g, h) -> bool:
    return find_hom(g, h) is not None


def is_k_colorable(g, k: int) -> bool:
    return find_hom(g, clique(k)) is not None


def compose_maps(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """The composite v -> g[f[v]] (first f, then g)."""
    return [g[a] for a in f]
