"""Command-line front end.

Graph operands are graph6 strings, paths to graph6 or edge-list files, or
``--named NAME``; operands are taken in command-line order. Exit codes: 0 on
success, 1 when a result contradicts a known result about a bundled graph,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import algebra, classify, cores, homsolver, relations
from .graphcore import (
    INFINITE,
    SPORADIC_7_CORES,
    Graph,
    GraphError,
    add_universal,
    clique,
    complement,
    cycle,
    edgelist_decode,
    graph6_decode,
    named,
    odd_girth,
    path,
)
from .iso import canonical_graph6

_NAMED_PREFIX = "name:"


class UsageError(Exception):
    pass


def resolve_name(name: str) -> Graph:
    """Bundled names plus the families kN, cN, coCN (complement of C_N), pN, c5pN."""
    key = name.lower().replace("-", "")
    m = re.fullmatch(r"(k|c|coc|p|c5p)(\d+)", key)
    if m and not (m.group(1) == "c" and key in ("c5p1", "c5p2")):
        kind, k = m.group(1), int(m.group(2))
        if kind == "k":
            return clique(k)
        if kind == "c":
            return cycle(k)
        if kind == "coc":
            return complement(cycle(k))
        if kind == "p":
            return path(k)
        return add_universal(cycle(5), k)
    return named(name)


def parse_graph(token: str) -> Graph:
    if token.startswith(_NAMED_PREFIX):
        return resolve_name(token[len(_NAMED_PREFIX):])
    if os.path.isfile(token):
        with open(token, encoding="ascii") as fh:
            text = fh.read()
        first = next((ln.split() for ln in text.splitlines() if ln.strip()), [])
        if len(first) == 2 and all(t.isdigit() for t in first):
            return edgelist_decode(text)
        return graph6_decode(text.strip())
    return graph6_decode(token)


def _rewrite_named(argv: list[str]) -> list[str]:
    # --named X becomes a positional operand so operand order is preserved
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--named":
            val = next(it, None)
            if val is None:
                raise UsageError("--named needs a value")
            out.append(_NAMED_PREFIX + val)
        elif tok.startswith("--named="):
            out.append(_NAMED_PREFIX + tok.split("=", 1)[1])
        else:
            out.append(tok)
    return out


def _graphs(tokens: list[str], count: int) -> list[Graph]:
    if len(tokens) != count:
        raise UsageError(f"expected {count} graph operand(s), got {len(tokens)}")
    return [parse_graph(t) for t in tokens]


def _read(path_: str) -> str:
    with open(path_, encoding="ascii") as fh:
        return fh.read()


# known positive results for bundled graphs, by canonical form
def _claimed_projective() -> set[str]:
    graphs = [clique(k) for k in range(3, 8)]
    graphs += [cycle(5), cycle(7), cycle(9), complement(cycle(7)), complement(cycle(9))]
    graphs += [named(x) for x in ("grotzsch", "petersen", "c5p1", "c5p2", *SPORADIC_7_CORES)]
    return {canonical_graph6(g) for g in graphs}


def _is_sporadic(g: Graph) -> bool:
    return g.n == 7 and canonical_graph6(g) in {canonical_graph6(named(x)) for x in SPORADIC_7_CORES}


# -- subcommands -----------------------------------------------------------


def cmd_hom(args):
    g, h = _graphs(args.graphs, 2)
    f = homsolver.find_hom(g, h)
    return {"exists": f is not None, "map": f}, 0


def cmd_core(args):
    (g,) = _graphs(args.graphs, 1)
    keep, f = cores.retraction(g)
    c = cores.compute_core(g)
    return {"core_vertices": keep, "core": canonical_graph6(c), "n": c.n, "retraction": f}, 0


def cmd_is_core(args):
    (g,) = _graphs(args.graphs, 1)
    return {"is_core": cores.is_core(g)}, 0


def cmd_odd_girth(args):
    (g,) = _graphs(args.graphs, 1)
    og = odd_girth(g)
    return {"odd_girth": "inf" if og is INFINITE else og}, 0


def cmd_poly(args):
    (h,) = _graphs(args.graphs, 1)
    pins = algebra.idempotent_pins(h.n, args.arity) if args.idempotent else None
    forbidden = [algebra.projection(h.n, args.arity, i) for i in range(args.arity)]
    f = algebra.find_polymorphism(h, args.arity, pins, forbidden)
    return {
        "arity": args.arity,
        "idempotent_only": args.idempotent,
        "non_projection": None if f is None else f.to_json(),
    }, 0


def cmd_semiproj(args):
    (h,) = _graphs(args.graphs, 1)
    f = algebra.find_semiprojection(h, args.arity)
    out = {"arity": args.arity, "semiprojection": None if f is None else f.to_json()}
    bad = f is not None and args.arity in (2, 3) and _is_sporadic(h)
    return out, 1 if bad else 0


def cmd_projective(args):
    (h,) = _graphs(args.graphs, 1)
    verdict = algebra.is_projective(h, all_routes=args.all_routes)
    bad = verdict.status != "projective" and canonical_graph6(h) in _claimed_projective()
    return verdict.to_json(), 1 if bad else 0


def cmd_decompose(args):
    (h,) = _graphs(args.graphs, 1)
    dec, parts = algebra.is_decomposable(h)
    out = {"decomposable": dec, "factors": None}
    if dec:
        a, b, iso = parts
        out["factors"] = [canonical_graph6(a), canonical_graph6(b)]
        out["iso"] = list(iso)
    return out, 0


def cmd_classify(args):
    recs = classify.classify_cores(args.n, jobs=args.jobs, allow_n8=args.unsafe_n8)
    summary = classify.summarize(args.n, recs)
    if args.n > classify.MAX_N:
        summary["header"] = "no reference list for this n; results carry no claim"
    out = {"summary": summary, "records": [json.loads(r.to_json()) for r in recs]}
    return out, 0 if summary["ok"] else 1


def cmd_conjecture(args):
    rep = classify.verify_conjecture(args.n, jobs=args.jobs)
    return rep, 0 if rep["ok"] else 1


def cmd_ppdef(args):
    (h,) = _graphs(args.graphs, 1)
    formula = relations.neq_pp_template(args.template, args.param)
    rel = relations.pp_evaluate(formula, h)
    defines = rel == relations.Relation.neq(h.n)
    out = {"formula": str(formula), "size": len(rel), "defines_neq": defines}
    bad = False
    try:
        fam = relations.template_graph(args.template, args.param)
        bad = not defines and fam.n == h.n and canonical_graph6(fam) == canonical_graph6(h)
    except (ValueError, TypeError):
        pass
    return out, 1 if bad else 0


def cmd_qfpp(args):
    (h,) = _graphs(args.graphs, 1)
    r = relations.Relation.loads(_read(args.relation))
    if r.k != h.n:
        raise UsageError(f"relation domain {r.k} differs from the graph's {h.n} vertices")
    formula = relations.qfpp_definition(r, h)
    return {"qfpp_definable": formula is not None, "formula": None if formula is None else str(formula)}, 0


def cmd_wall(args):
    (h,) = _graphs(args.graphs, 1)
    matrix = relations.load_matrix(_read(args.matrix))
    r = relations.Relation.loads(_read(args.relation))
    ok = relations.check_wall(matrix, r, h)
    out = {"is_wall": ok, "constant_vertex": None}
    if ok:
        out["constant_vertex"] = relations.triviality_witness(matrix, r, h)
    return out, 0


def _human(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, int) for x in v):
                lines.append(f"{pad}{k}:")
                lines.append(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            f"{pad}-\n{_human(x, indent + 1)}" if isinstance(x, dict) else f"{pad}- {json.dumps(x)}"
            for x in obj
        )
    return pad + json.dumps(obj)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphclones", description=__doc__.split("\n\n")[0])
    p.add_argument("--json", action="store_true", help="structured output")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graphs", nargs="*", metavar="GRAPH")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(func=func)
        return sp

    graph_cmd("hom", cmd_hom, "find a homomorphism G -> H")
    graph_cmd("core", cmd_core, "compute the core")
    graph_cmd("is-core", cmd_is_core, "decide whether G is a core")
    graph_cmd("odd-girth", cmd_odd_girth, "odd girth")
    sp = graph_cmd("poly", cmd_poly, "find a non-projection polymorphism")
    sp.add_argument("--arity", type=int, required=True)
    sp.add_argument("--idempotent", action="store_true")
    sp = graph_cmd("semiproj", cmd_semiproj, "find a semiprojection")
    sp.add_argument("--arity", type=int, required=True)
    sp = graph_cmd("projective", cmd_projective, "projectivity verdict with certificates")
    sp.add_argument("--all-routes", action="store_true", help="run every route and cross-check")
    graph_cmd("decompose", cmd_decompose, "test for a non-trivial product decomposition")
    sp = graph_cmd("ppdef", cmd_ppdef, "evaluate a NEQ pp-template on H")
    sp.add_argument("--template", required=True, choices=relations.TEMPLATES + ("grotzsch", "petersen"))
    sp.add_argument("--param", type=int)
    sp = sub.add_parser("qfpp", help="decide qfpp-definability of a relation from E_H")
    sp.add_argument("relation")
    sp.add_argument("graphs", nargs="*", metavar="GRAPH")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_qfpp)
    sp = sub.add_parser("wall", help="check an R-wall and look for a constant tuple")
    sp.add_argument("matrix")
    sp.add_argument("relation")
    sp.add_argument("graphs", nargs="*", metavar="GRAPH")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_wall)
    for name, func, help_ in (
        ("classify-cores", cmd_classify, "classify all cores on n vertices"),
        ("conjecture", cmd_conjecture, "check projective <=> indecomposable up to n vertices"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        if name == "classify-cores":
            sp.add_argument("--unsafe-n8", action="store_true")
        sp.set_defaults(func=func)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_rewrite_named(argv))
        result, code = args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, GraphError, ValueError, OSError, homsolver.BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(result, sort_keys=True, separators=(",", ":")))
    else:
        print(_human(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
