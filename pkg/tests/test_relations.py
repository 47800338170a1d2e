from itertools import chain, combinations, product

import pytest

from conftest import random_graph
from graphclones.algebra import power
from graphclones.graphcore import (
    Graph,
    add_universal,
    clique,
    complement,
    cycle,
    disjoint_union,
    is_induced_cycle,
    named,
    odd_girth,
)
from graphclones.homsolver import BudgetExceeded, iter_homs
from graphclones.relations import (
    PPFormula,
    Relation,
    bipartition_pattern,
    check_wall,
    pairwise_wall,
    cycle_edge_subgraph,
    cycle_formula,
    cycle_relation,
    dump_matrix,
    induced_kcycle_check,
    is_partial_polymorphism,
    load_matrix,
    matching_templates,
    neq_pp_template,
    pattern_relation,
    pp_evaluate,
    qfpp_definable,
    qfpp_definition,
    template_graph,
    triviality_witness,
)

C5 = cycle(5)
PETERSEN = named("petersen")


def brute_pp(formula: PPFormula, h: Graph) -> Relation:
    out = []
    total = formula.n_free + formula.n_exist
    for t in product(range(h.n), repeat=total):
        ok = all(h.has_edge(t[i], t[j]) if kind == "E" else t[i] == t[j] for kind, i, j in formula.atoms)
        if ok:
            out.append(t[: formula.n_free])
    return Relation.of(h.n, formula.n_free, out)


def brute_partial_polymorphism(f, r: Relation) -> bool:
    rows = list(f)
    for choice in product(rows, repeat=r.arity):
        m = len(rows[0])
        if all(tuple(row[j] for row in choice) in r for j in range(m)):
            if tuple(f[row] for row in choice) not in r:
                return False
    return True


# -- pp evaluation ---------------------------------------------------------


def test_pp_edge_identity():
    for h in (C5, PETERSEN, named("g2")):
        assert pp_evaluate(PPFormula(2, 0, (("E", 0, 1),)), h) == Relation.from_graph(h)


def test_pp_walk_formulas():
    assert pp_evaluate(neq_pp_template("three_walk"), named("grotzsch")) == Relation.neq(11)
    assert pp_evaluate(neq_pp_template("odd_cycle", 5), C5) == Relation.neq(5)


@pytest.mark.parametrize(
    "name,param,graph",
    [("odd_cycle", 7, cycle(7)), ("odd_cycle", 9, cycle(9)), ("complement_cycle", 3, complement(cycle(7))),
     ("complement_cycle", 4, complement(cycle(9))), ("c5_plus", 1, add_universal(cycle(5), 1)),
     ("c5_plus", 2, add_universal(cycle(5), 2)), ("grotzsch", None, named("grotzsch")),
     ("petersen", None, PETERSEN), ("clique", 4, clique(4))],
)
def test_templates_define_neq(name, param, graph):
    formula = neq_pp_template(name, param)
    assert pp_evaluate(formula, graph) == Relation.neq(graph.n)
    assert template_graph(name, param) == graph or name in ("grotzsch", "petersen")


def test_template_wrong_graph_is_not_neq():
    # the 3-walk on K4 also relates a vertex to itself
    assert pp_evaluate(neq_pp_template("three_walk"), clique(4)) != Relation.neq(4)
    with pytest.raises(ValueError):
        neq_pp_template("odd_cycle", 4)
    with pytest.raises(ValueError):
        neq_pp_template("heawood")


def test_pp_evaluate_matches_brute_force(rng):
    for _ in range(150):
        h = random_graph(rng, rng.randint(2, 5), 0.6)
        n_free, n_exist = rng.randint(1, 3), rng.randint(0, 2)
        total = n_free + n_exist
        atoms = tuple(
            (rng.choice("EE="), rng.randrange(total), rng.randrange(total)) for _ in range(rng.randint(1, 4))
        )
        f = PPFormula(n_free, n_exist, atoms)
        assert pp_evaluate(f, h) == brute_pp(f, h), str(f)


def test_pp_budget():
    with pytest.raises(BudgetExceeded):
        pp_evaluate(PPFormula(8, 0, (("E", 0, 1),)), named("grotzsch"))


def test_matching_templates():
    names = {n for n, _ in matching_templates(C5)}
    assert names == {"odd_cycle", "c5_plus"}
    assert matching_templates(named("g1")) == []


# -- qfpp -----------------------------------------------------------------


def _brute_qfpp_definable_set(k: int, n: int, base: Relation) -> set:
    atoms = [("R", idx) for idx in product(range(n), repeat=base.arity)]
    atoms += [("=", (i, j)) for i, j in combinations(range(n), 2)]
    space = list(product(range(k), repeat=n))
    sat = []
    for kind, idx in atoms:
        if kind == "R":
            sat.append(frozenset(t for t in space if tuple(t[i] for i in idx) in base))
        else:
            sat.append(frozenset(t for t in space if t[idx[0]] == t[idx[1]]))
    out = set()
    for mask in range(1 << len(atoms)):
        cur = frozenset(space)
        for b in range(len(atoms)):
            if mask >> b & 1:
                cur &= sat[b]
        out.add(cur)
    return out


@pytest.mark.parametrize("k,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_atom_closure_oracle(k, n, rng):
    space = list(product(range(k), repeat=n))
    for h in [clique(k), Graph.empty(k), random_graph(rng, k)]:
        base = Relation.from_graph(h)
        definable = _brute_qfpp_definable_set(k, n, base)
        if 2 ** len(space) <= 4096:
            candidates = [frozenset(c) for c in chain.from_iterable(combinations(space, s) for s in range(len(space) + 1))]
        else:
            candidates = list(definable) + [frozenset(t for t in space if rng.random() < 0.5) for _ in range(400)]
        for cand in candidates:
            r = Relation.of(k, n, cand)
            assert qfpp_definable(r, h) == (cand in definable), (h, sorted(cand))


def test_qfpp_examples():
    for h in (C5, PETERSEN, named("g6")):
        assert qfpp_definable(Relation.from_graph(h), h)
    for h in (C5, PETERSEN):
        assert qfpp_definable(cycle_relation(h, 5, 5), h)
        assert qfpp_definable(cycle_relation(h, 5, 6), h)
    f = qfpp_definition(cycle_relation(C5, 5, 5), C5)
    assert pp_evaluate(f, C5) == cycle_relation(C5, 5, 5)


def test_no_inclusions_on_4_vertices():
    pairs = list(combinations(range(4), 2))
    graphs = [Graph.from_edges(4, [p for b, p in enumerate(pairs) if m >> b & 1]) for m in range(64)]
    for h in graphs:
        for h2 in graphs:
            if h2.num_edges and h2 != h:
                assert not qfpp_definable(Relation.from_graph(h2), h)
        assert qfpp_definable(Relation.from_graph(h), h)


def test_galois_sanity(rng):
    for h in (clique(3), C5):
        eh = Relation.from_graph(h)
        rels = [eh, cycle_relation(h, odd_girth(h), odd_girth(h)), pp_evaluate(cycle_formula(3, 3), h),
                pp_evaluate(PPFormula(3, 0, (("E", 0, 1), ("E", 1, 2))), h)]
        rels = [r for r in rels if qfpp_definable(r, h)]
        assert len(rels) >= 3
        passing = 0
        for _ in range(150):
            m = rng.randint(1, 2)
            dom = rng.sample(list(product(range(h.n), repeat=m)), rng.randint(1, min(5, h.n ** m)))
            f = {t: rng.randrange(h.n) for t in dom}
            if is_partial_polymorphism(f, eh):
                passing += 1
                for r in rels:
                    assert is_partial_polymorphism(f, r)
        assert passing > 10


def test_pp_sanity_polymorphisms_preserve_neq():
    neq_pairs = lambda k: [(x, y) for x in range(k) for y in range(k) if x != y]
    for h in (clique(3), C5, complement(cycle(7))):
        assert pp_evaluate(neq_pp_template(*matching_templates(h)[0]), h) == Relation.neq(h.n)
        for f in list(iter_homs(power(h, 1), h)) + _first(iter_homs(power(h, 2), h), 40):
            m = 1 if len(f) == h.n else 2
            for cols in product(neq_pairs(h.n), repeat=m):
                x = tuple(c[0] for c in cols)
                y = tuple(c[1] for c in cols)
                ix = sum(v * h.n ** (m - 1 - i) for i, v in enumerate(x))
                iy = sum(v * h.n ** (m - 1 - i) for i, v in enumerate(y))
                assert f[ix] != f[iy]


def _first(it, k):
    out = []
    for x in it:
        out.append(x)
        if len(out) == k:
            break
    return out


# -- cycle constructions ----------------------------------------------------


def test_cycle_relation_examples():
    r = cycle_relation(C5, 5, 5)
    brute = [t for t in product(range(5), repeat=5) if all(C5.has_edge(t[i], t[(i + 1) % 5]) for i in range(5))]
    assert len(r) == 10 and list(r.tuples) == brute
    assert len(cycle_relation(clique(3), 3, 3)) == 6
    assert all(len(set(t)) == 3 for t in cycle_relation(clique(3), 3, 3).tuples)
    assert len(cycle_relation(C5, 5, 6)) == 50
    with pytest.raises(ValueError):
        cycle_relation(C5, 4, 5)
    with pytest.raises(ValueError):
        cycle_relation(C5, 5, 3)


def test_induced_kcycle_check():
    assert induced_kcycle_check(C5, (0, 1, 2, 3, 4))
    assert not induced_kcycle_check(C5, (0, 1, 0, 1, 2))
    with pytest.raises(ValueError):
        induced_kcycle_check(C5, (0, 1, 2))


@pytest.mark.parametrize("h", [C5, PETERSEN], ids=["C5", "petersen"])
def test_induced_kcycle_agrees_with_literal_check(h):
    for t in product(range(h.n), repeat=5):
        assert induced_kcycle_check(h, t) == is_induced_cycle(h, t)


def test_cycle_edge_subgraph():
    assert cycle_edge_subgraph(clique(4), 3) == clique(4)
    assert cycle_edge_subgraph(C5, 5) == C5
    pendant = Graph.from_edges(6, C5.edges() + [(0, 5)])
    assert cycle_edge_subgraph(pendant, 5) == Graph.from_edges(6, C5.edges())
    # edges of a triangle are on no 5-cycle in K3 + C5
    g = disjoint_union(clique(3), C5)
    assert cycle_edge_subgraph(g, 5).num_edges == 5


# -- partial polymorphisms and walls --------------------------------------


@pytest.mark.parametrize("h", [C5, PETERSEN], ids=["C5", "petersen"])
def test_constant_on_edge_separates(h):
    r = cycle_relation(h, 5, 5)
    eh = Relation.from_graph(h)
    x, y = h.edges()[0]
    f = {(x,): x, (y,): x}
    assert is_partial_polymorphism(f, r)
    assert not is_partial_polymorphism(f, eh)


def test_partial_polymorphism_oracle(rng):
    for _ in range(150):
        h = random_graph(rng, rng.randint(2, 4), 0.6)
        r = rng.choice([Relation.from_graph(h), Relation.neq(h.n), pp_evaluate(PPFormula(3, 0, (("E", 0, 1), ("E", 1, 2))), h)])
        m = rng.randint(1, 2)
        dom = rng.sample(list(product(range(h.n), repeat=m)), rng.randint(1, min(4, h.n ** m)))
        f = {t: rng.randrange(h.n) for t in dom}
        assert is_partial_polymorphism(f, r) == brute_partial_polymorphism(f, r)


def test_restriction_of_total_polymorphism():
    h = C5
    eh = Relation.from_graph(h)
    for table in _first(iter_homs(power(h, 2), h), 5):
        full = {(x, y): table[x * 5 + y] for x, y in product(range(5), repeat=2)}
        part = {k: v for i, (k, v) in enumerate(full.items()) if i % 3 == 0}
        assert is_partial_polymorphism(part, eh)


def test_check_wall():
    r = Relation.of(5, 3, product(range(5), repeat=3))
    wall = pairwise_wall(r, C5)
    assert len(wall) == 3 and len(wall[0]) == 3
    assert check_wall(wall, r, C5)
    col0 = tuple(row[0] for row in wall)
    bad = Relation.of(5, 3, [t for t in r.tuples if t != col0])
    assert not check_wall(wall, bad, C5)
    single = Relation.of(5, 1, [(2,)])
    assert check_wall([[2]], single, C5)
    with pytest.raises(ValueError):
        check_wall([[0], [1]], single, C5)


def test_triviality_witness():
    r = Relation.of(5, 3, product(range(5), repeat=3))
    assert triviality_witness(pairwise_wall(r, C5), r, C5) == 0
    neq = Relation.neq(3)
    assert triviality_witness([[0], [1]], neq, Graph.empty(3)) is None
    with pytest.raises(ValueError):
        triviality_witness([[0], [1]], neq, clique(3))


def test_bipartition_construction_defines_edges(rng):
    for h in (C5, PETERSEN, cycle(7)):
        og = odd_girth(h)
        eh = Relation.from_graph(h)
        done = 0
        for _ in range(60):
            n = rng.randint(2, og - 1)
            atoms = [("E", 0, 1)] + [
                ("E", i, j) for i, j in combinations(range(n), 2) if rng.random() < 0.4 and (i, j) != (0, 1)
            ]
            r = pp_evaluate(PPFormula(n, 0, tuple(atoms)), h)
            if not r.tuples:
                continue
            pattern = bipartition_pattern(r, h)
            assert pattern_relation(r, pattern) == eh
            assert qfpp_definable(eh, r)
            done += 1
        assert done > 20


# -- file formats ----------------------------------------------------------


def test_relation_and_matrix_files():
    r = cycle_relation(C5, 5, 5)
    assert Relation.loads(r.dumps()) == r
    assert r.dumps().splitlines()[0] == "5 5"
    m = [[0, 1], [2, 3]]
    assert load_matrix(dump_matrix(m)) == m
    with pytest.raises(ValueError):
        load_matrix("2 2\n0 1\n")
    with pytest.raises(ValueError):
        Relation.loads("3 2\n0 3\n")
