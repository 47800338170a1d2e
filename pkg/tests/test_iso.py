from itertools import permutations

import networkx as nx
import pytest

from conftest import random_graph, random_perm
from graphclones.algebra import unary_polymorphisms
from graphclones.graphcore import Graph, clique, complement, cycle, motif_graph, named
from graphclones.iso import (
    automorphisms,
    canon,
    compose,
    find_isomorphism,
    inverse,
    is_automorphism,
    is_isomorphic,
)

CORPUS = [clique(3), clique(5), cycle(5), cycle(7), complement(cycle(7)), named("petersen"),
          named("grotzsch"), named("c5p1"), named("c5p2")] + [named(f"g{i}") for i in range(1, 7)]

LETTERS = dict(zip("abcdeuv", range(7)))


def _letter_perm(mapping: str) -> list[int]:
    # "a->u b->c ..." written as pairs "au bc ..."
    pairs = dict(p for p in mapping.split())
    return [LETTERS[pairs[x]] for x in "abcdeuv"]


def test_canon_relabelling_invariance(rng):
    for g in CORPUS:
        ref = canon(g)
        assert g.relabel(list(ref.perm)) == ref.graph
        for _ in range(100):
            assert canon(g.relabel(random_perm(rng, g.n))).graph6 == ref.graph6


def test_canon_random_graphs_agree_with_networkx(rng):
    for _ in range(150):
        n = rng.randint(2, 9)
        a, b = random_graph(rng, n), random_graph(rng, n)
        if rng.random() < 0.5:
            b = a.relabel(random_perm(rng, n))
        assert is_isomorphic(a, b) == nx.is_isomorphic(_nx(a), _nx(b))


def test_primed_motif_isomorphisms():
    g4_prime = motif_graph(["eu", "cv", "dv"])
    g3_prime = motif_graph(["eu", "cu", "cv", "dv"])
    assert g4_prime.relabel(_letter_perm("au bc cd de ea ub vv")) == named("g4")
    assert g3_prime.relabel(_letter_perm("ad be ca db ec uv vu")) == named("g3")
    assert canon(g4_prime).graph6 == canon(named("g4")).graph6
    assert canon(g3_prime).graph6 == canon(named("g3")).graph6


def test_is_isomorphic_examples():
    assert not is_isomorphic(named("g2"), named("g4"))
    assert is_isomorphic(named("g2"), named("g2"))
    assert is_isomorphic(complement(cycle(5)), cycle(5))
    assert not is_isomorphic(clique(3), clique(4))


def test_g2_g4_degree4_argument():
    # keep only degree-4 vertices: a triangle for one, a path for the other
    def deg4(g: Graph) -> Graph:
        from graphclones.graphcore import induced

        return induced(g, [v for v in range(g.n) if g.degree(v) == 4])

    assert is_isomorphic(deg4(named("g4")), clique(3))
    assert deg4(named("g2")).num_edges == 2 and deg4(named("g2")).n == 3


def test_find_isomorphism():
    g = named("petersen")
    p = [3, 1, 4, 0, 9, 2, 6, 5, 8, 7]
    h = g.relabel(p)
    q = find_isomorphism(g, h)
    assert g.relabel(q) == h
    assert find_isomorphism(cycle(6), complement(cycle(6))) is None


@pytest.mark.parametrize("g,size", [(clique(3), 6), (cycle(5), 10), (named("petersen"), 120),
                                    (named("c5p1"), 10), (Graph.empty(3), 6)])
def test_automorphism_counts(g, size):
    assert len(automorphisms(g)) == size


def test_automorphisms_brute_force_small(rng):
    for _ in range(40):
        n = rng.randint(1, 6)
        g = random_graph(rng, n)
        brute = sorted(p for p in permutations(range(n)) if g.relabel(p) == g)
        assert sorted(automorphisms(g)) == brute


def test_automorphism_group_closure():
    for g in (cycle(5), named("petersen"), named("g3")):
        auts = set(automorphisms(g))
        assert tuple(range(g.n)) in auts
        for p in auts:
            assert inverse(p) in auts
            assert is_automorphism(g, p)
        some = sorted(auts)[:10]
        for p in some:
            for q in some:
                assert compose(p, q) in auts


def test_core_automorphisms_equal_unary_polymorphisms():
    for g in [clique(3), cycle(5), cycle(7), named("c5p1"), named("petersen")] + [named(f"g{i}") for i in range(1, 7)]:
        assert sorted(automorphisms(g)) == sorted(unary_polymorphisms(g))


def test_canon_large():
    assert canon(clique(16)).graph.num_edges == 120
    assert canon(Graph.empty(16)).graph.num_edges == 0


def _nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges())
    return out
