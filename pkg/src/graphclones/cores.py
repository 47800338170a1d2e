"""Cores: recognition, computation and cheap necessary/sufficient filters."""

from __future__ import annotations

from itertools import combinations

from .graphcore import Graph, GraphError, complement, delete_vertex, induced, max_clique_size
from .homsolver import find_hom, is_k_colorable


def is_core(h: Graph) -> bool:
    """A graph is a core iff it has no homomorphism into any one-vertex-deleted subgraph."""
    return all(find_hom(h, delete_vertex(h, v)) is None for v in range(h.n))


def core_vertices(h: Graph) -> list[int]:
    """Vertices (labels of h) of an induced subgraph that h retracts to and that is a core.

    Deletions are tried in ascending vertex order and the scan restarts after each
    successful one, so the answer is deterministic.
    """
    keep = list(range(h.n))
    restart = True
    while restart:
        restart = False
        current = induced(h, keep)
        for i in range(len(keep)):
            if find_hom(current, delete_vertex(current, i)) is not None:
                del keep[i]
                restart = True
                break
    return keep


def compute_core(h: Graph) -> Graph:
    return induced(h, core_vertices(h))


def retraction(h: Graph) -> tuple[list[int], list[int]]:
    """(core vertex labels, a homomorphism h -> core written in core-local indices)."""
    keep = core_vertices(h)
    f = find_hom(h, induced(h, keep))
    return keep, f


def min_degree_check(h: Graph) -> bool:
    return all(d >= 2 for d in h.degrees())


def quick_core_filter(h: Graph) -> bool:
    """Sufficient condition for a 7-vertex graph to be a core.

    Not 3-colourable, no K4, and no vertex of degree 5 or more.
    """
    if h.n != 7:
        raise GraphError("the quick core filter applies to 7-vertex graphs only")
    return max(h.degrees()) <= 4 and max_clique_size(h) < 4 and not is_k_colorable(h, 3)


def _is_cycle(g: Graph) -> bool:
    return g.n >= 3 and all(d == 2 for d in g.degrees()) and g.is_connected()


def odd_holes_and_antiholes(h: Graph) -> list[tuple[str, tuple[int, ...]]]:
    """Every vertex set of odd size >= 5 inducing a cycle ('hole') or a cycle complement ('antihole')."""
    found = []
    for k in range(5, h.n + 1, 2):
        for vs in combinations(range(h.n), k):
            sub = induced(h, vs)
            if _is_cycle(sub):
                found.append(("hole", vs))
            elif _is_cycle(complement(sub)):
                found.append(("antihole", vs))
    return found


def has_induced_odd_hole_or_antihole(h: Graph) -> bool:
    for k in range(5, h.n + 1, 2):
        for vs in combinations(range(h.n), k):
            sub = induced(h, vs)
            if _is_cycle(sub) or _is_cycle(complement(sub)):
                return True
    return False
