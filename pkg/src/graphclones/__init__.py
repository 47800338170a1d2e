"""Graph homomorphisms, cores, polymorphisms and projectivity for small graphs."""

from .graphcore import (
    INFINITE,
    Graph,
    GraphError,
    add_universal,
    clique,
    complement,
    cycle,
    disjoint_union,
    graph6_decode,
    graph6_encode,
    induced,
    named,
    odd_girth,
    path,
)
from .iso import automorphisms, canon, canonical_graph6, is_isomorphic
from .homsolver import BudgetExceeded, InconsistentPins, count_homs, find_hom, is_k_colorable
from .cores import compute_core, has_induced_odd_hole_or_antihole, is_core, min_degree_check, quick_core_filter
from .algebra import (
    Polymorphism,
    find_polymorphism,
    find_semiprojection,
    is_decomposable,
    is_projective,
    power,
    semiprojection_arity_bound,
    unary_polymorphisms,
)
from .relations import PPFormula, Relation, neq_pp_template, pp_evaluate, qfpp_definable
from .classify import classify_cores, enumerate_graphs, verify_conjecture

__version__ = "0.1.0"

__all__ = [
    "INFINITE",
    "Graph",
    "GraphError",
    "add_universal",
    "clique",
    "complement",
    "cycle",
    "disjoint_union",
    "graph6_decode",
    "graph6_encode",
    "induced",
    "named",
    "odd_girth",
    "path",
    "Polymorphism",
    "find_polymorphism",
    "find_semiprojection",
    "is_decomposable",
    "is_projective",
    "power",
    "semiprojection_arity_bound",
    "unary_polymorphisms",
    "automorphisms",
    "canon",
    "canonical_graph6",
    "is_isomorphic",
    "BudgetExceeded",
    "InconsistentPins",
    "count_homs",
    "find_hom",
    "is_k_colorable",
    "compute_core",
    "has_induced_odd_hole_or_antihole",
    "is_core",
    "min_degree_check",
    "quick_core_filter",
    "PPFormula",
    "Relation",
    "neq_pp_template",
    "pp_evaluate",
    "qfpp_definable",
    "classify_cores",
    "enumerate_graphs",
    "verify_conjecture",
]
