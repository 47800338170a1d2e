from collections import Counter

import networkx as nx
import pytest

from graphclones.classify import (
    EXPECTED_CORES,
    classify_cores,
    enumerate_graphs,
    summarize,
    verify_conjecture,
)
from graphclones.graphcore import GraphError, graph6_decode
from graphclones.iso import canon


def test_enumeration_counts_match_graph_atlas():
    atlas = Counter(g.number_of_nodes() for g in nx.graph_atlas_g())
    for n in range(1, 8):
        assert len(enumerate_graphs(n)) == atlas[n]
    assert [len(enumerate_graphs(n)) for n in (1, 4, 7)] == [1, 11, 1044]


@pytest.mark.parametrize("n", range(0, 6))
def test_extension_matches_bitmask_filter(n):
    assert enumerate_graphs(n) == enumerate_graphs(n, method="bitmask")


def test_representatives_are_canonical_and_sorted():
    gs = enumerate_graphs(6)
    assert all(canon(g).graph == g for g in gs)
    codes = [canon(g).graph6 for g in gs]
    assert codes == sorted(codes) and len(set(codes)) == len(codes)


def test_enumeration_limits():
    with pytest.raises(GraphError):
        enumerate_graphs(9)
    with pytest.raises(ValueError):
        enumerate_graphs(3, method="orderly")


@pytest.mark.parametrize("n", range(1, 8))
def test_classify_cores(n):
    recs = classify_cores(n)
    assert {r.name for r in recs} == EXPECTED_CORES[n]
    assert len(recs) == len(EXPECTED_CORES[n])
    s = summarize(n, recs)
    assert s["ok"], s
    for r in recs:
        assert graph6_decode(r.graph6).n == n
        assert r.checks["min_degree"] and r.checks["odd_hole_or_antihole"]
        if n >= 3:
            assert r.projectivity["status"] == "projective"


def test_sporadic_edge_histogram():
    recs = classify_cores(7)
    hist = sorted(r.edges for r in recs if r.name.startswith("G"))
    assert hist == [11, 12, 12, 12, 13, 13]


def test_worker_count_does_not_change_output():
    one = [r.to_json() for r in classify_cores(6, jobs=1)]
    two = [r.to_json() for r in classify_cores(6, jobs=2)]
    assert one == two


def test_n8_is_gated():
    with pytest.raises(GraphError):
        classify_cores(8)


def test_summary_flags_mismatch():
    recs = classify_cores(6)
    s = summarize(6, recs[:1])
    assert not s["ok"]


def test_verify_conjecture():
    rep = verify_conjecture(7)
    assert rep["ok"] and rep["counterexamples"] == [] and rep["undetermined"] == []
    by_name = {r["name"]: r for r in rep["records"]}
    assert by_name["C5+1"]["projective"] == "projective" and not by_name["C5+1"]["decomposable"]
    assert by_name["K3"]["projective"] == "projective" and not by_name["K3"]["decomposable"]
    assert all(not r["decomposable"] for r in rep["records"] if r["n"] == 7)
    assert rep["checked"] == sum(len(EXPECTED_CORES[n]) for n in range(3, 8))
