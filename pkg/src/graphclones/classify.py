"""Exhaustive classification of small cores and the projectivity/indecomposability check."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations

from .algebra import is_decomposable, is_projective
from .cores import has_induced_odd_hole_or_antihole, is_core, min_degree_check
from .graphcore import (
    INFINITE,
    Graph,
    GraphError,
    add_universal,
    clique,
    complement,
    cycle,
    graph6_decode,
    named,
    odd_girth,
)
from .iso import canon, canonical_graph6

MAX_N = 7
MAX_N_UNSAFE = 8


def _extend(g: Graph, nbrs: int) -> Graph:
    n = g.n + 1
    rows = list(g.adj) + [nbrs]
    for v in range(g.n):
        if nbrs >> v & 1:
            rows[v] |= 1 << g.n
    return Graph(n, tuple(rows))


@lru_cache(maxsize=None)
def _representatives(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0, ()),)
    seen: dict[str, Graph] = {}
    for g in _representatives(n - 1):
        for nbrs in range(1 << (n - 1)):
            c = canon(_extend(g, nbrs))
            seen.setdefault(c.graph6, c.graph)
    return tuple(seen[k] for k in sorted(seen))


def enumerate_graphs(n: int, method: str = "extension") -> list[Graph]:
    """One canonical representative per isomorphism class on n vertices, sorted by graph6.

    "extension" adds a vertex in every possible way to each class on n-1 vertices.
    "bitmask" scans all edge sets and keeps those equal to their canonical form;
    it is exponentially slower and kept as an independent cross-check.
    """
    if n < 0 or n > MAX_N_UNSAFE:
        raise GraphError(f"enumeration supports 0 <= n <= {MAX_N_UNSAFE}")
    if method == "extension":
        return list(_representatives(n))
    if method == "bitmask":
        pairs = list(combinations(range(n), 2))
        out = {}
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(n, [p for b, p in enumerate(pairs) if mask >> b & 1])
            c = canon(g)
            if c.graph == g:
                out[c.graph6] = g
        return [out[k] for k in sorted(out)]
    raise ValueError(f"unknown enumeration method {method!r}")


@lru_cache(maxsize=None)
def bundled_cores() -> dict[str, str]:
    """Canonical graph6 -> name for every named core on at most 7 vertices."""
    graphs = {f"K{k}": clique(k) for k in range(1, 8)}
    graphs.update(
        {
            "C5": cycle(5),
            "C7": cycle(7),
            "co-C7": complement(cycle(7)),
            "C5+1": add_universal(cycle(5), 1),
            "C5+2": add_universal(cycle(5), 2),
        }
    )
    graphs.update({f"G{i}": named(f"g{i}") for i in range(1, 7)})
    return {canonical_graph6(g): name for name, g in graphs.items()}


EXPECTED_CORES = {
    1: {"K1"},
    2: {"K2"},
    3: {"K3"},
    4: {"K4"},
    5: {"K5", "C5"},
    6: {"K6", "C5+1"},
    7: {"K7", "C7", "co-C7", "C5+2", "G1", "G2", "G3", "G4", "G5", "G6"},
}
SPORADIC_EDGE_HISTOGRAM = {11: 1, 12: 3, 13: 2}


@dataclass
class ClassificationRecord:
    graph6: str
    n: int
    edges: int
    is_core: bool
    odd_girth: int | str
    connected: bool
    projectivity: dict
    name: str | None = None
    checks: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))


def _record(g: Graph, with_projectivity: bool = True) -> ClassificationRecord | None:
    if g.n >= 3 and not min_degree_check(g):
        return None
    if not is_core(g):
        return None
    og = odd_girth(g)
    code = canonical_graph6(g)
    proper = g.n >= 3 and g.num_edges != g.n * (g.n - 1) // 2
    verdict = is_projective(g).to_json() if with_projectivity else {}
    return ClassificationRecord(
        graph6=code,
        n=g.n,
        edges=g.num_edges,
        is_core=True,
        odd_girth="inf" if og is INFINITE else og,
        connected=g.is_connected(),
        projectivity=verdict,
        name=bundled_cores().get(code),
        checks={
            "min_degree": g.n < 3 or min_degree_check(g),
            "odd_hole_or_antihole": (not proper) or has_induced_odd_hole_or_antihole(g),
        },
    )


def _work(chunk: list[str], with_projectivity: bool) -> list[dict]:
    out = []
    for code in chunk:
        rec = _record(graph6_decode(code), with_projectivity)
        if rec is not None:
            out.append(asdict(rec))
    return out


def classify_cores(
    n: int, jobs: int = 1, allow_n8: bool = False, with_projectivity: bool = True
) -> list[ClassificationRecord]:
    """Records for every core on exactly n vertices, ordered by canonical graph6.

    The result does not depend on jobs: chunks are merged and sorted.
    """
    if n < 1:
        raise GraphError("n must be positive")
    if n > MAX_N and not (n == MAX_N_UNSAFE and allow_n8):
        raise GraphError(f"classification is limited to n <= {MAX_N} (n = 8 needs allow_n8)")
    codes = [canonical_graph6(g) for g in enumerate_graphs(n)]
    if jobs <= 1:
        rows = _work(codes, with_projectivity)
    else:
        chunks = [codes[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_work, chunks, [with_projectivity] * jobs)
            rows = [r for part in parts for r in part]
    rows.sort(key=lambda r: r["graph6"])
    return [ClassificationRecord(**r) for r in rows]


def summarize(n: int, records: list[ClassificationRecord]) -> dict:
    """Counts plus checks of the record list against the known core list for n."""
    names = sorted(r.name or f"?{r.graph6}" for r in records)
    summary: dict = {"n": n, "cores": len(records), "names": names}
    checks = {
        "all_min_degree": all(r.checks.get("min_degree", True) for r in records),
        "all_odd_hole_or_antihole": all(r.checks.get("odd_hole_or_antihole", True) for r in records),
    }
    if n in EXPECTED_CORES:
        checks["matches_known_list"] = set(names) == EXPECTED_CORES[n] and len(names) == len(EXPECTED_CORES[n])
        if n == 7:
            hist = Counter(r.edges for r in records if r.name and r.name.startswith("G"))
            checks["sporadic_edge_histogram"] = dict(hist) == SPORADIC_EDGE_HISTOGRAM
            summary["sporadic_edge_histogram"] = {str(k): v for k, v in sorted(hist.items())}
    else:
        summary["note"] = "no known list for this n; results carry no claim"
    summary["checks"] = checks
    summary["ok"] = all(checks.values())
    return summary


def verify_conjecture(n: int, jobs: int = 1) -> dict:
    """Check 'projective iff indecomposable' on every connected core with 3..n vertices."""
    if n > MAX_N:
        raise GraphError(f"conjecture check is limited to n <= {MAX_N}")
    rows = []
    counterexamples = []
    undetermined = []
    for k in range(3, n + 1):
        for rec in classify_cores(k, jobs=jobs):
            if not rec.connected:
                continue
            g = graph6_decode(rec.graph6)
            decomposable, _ = is_decomposable(g)
            status = rec.projectivity["status"]
            row = {
                "graph6": rec.graph6,
                "name": rec.name,
                "n": k,
                "projective": status,
                "decomposable": decomposable,
            }
            rows.append(row)
            if status == "undetermined":
                undetermined.append(row)
            elif (status == "projective") == decomposable:
                counterexamples.append(row)
    return {
        "n": n,
        "checked": len(rows),
        "records": rows,
        "counterexamples": counterexamples,
        "undetermined": undetermined,
        "ok": not counterexamples and not undetermined,
    }
