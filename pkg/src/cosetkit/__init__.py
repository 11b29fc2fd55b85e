"""Coset acyclicity of Cayley graphs generated by involutions, and the
dual hypergraph view of the same questions.

The submodules are importable on their own; the names below are the ones
most scripts need.
"""

from .acyclicity import CosetCycle, acyclicity_level, find_coset_cycle, girth, is_2_acyclic, is_n_acyclic
from .catalog import entries as catalog_entries
from .catalog import make as catalog_group
from .cosets import Coset, coset, gen_set, partition
from .covering import check_compatible, covering_map, verify_covering
from .duality import (
    DualHypergraph,
    check_two_distances,
    chordless_to_coset,
    compare_levels,
    convex_closure_cayley,
    coset_to_chordless,
    dual_hypergraph,
    hyperedge_distance,
    rho,
)
from .errors import CosetKitError
from .group import CayleyGraph, Group, GroupSpec, build_group, cayley_graph, load_spec
from .hypergraph import Hypergraph, convex_closure, gyo_reduction, is_alpha_acyclic, tree_decomposition
from .paths import ANY, INNER, NON_TRIVIAL, CosetPath, distance, enumerate_paths, find_min_path, non_t, t_distance
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "ANY",
    "CayleyGraph",
    "Coset",
    "CosetCycle",
    "CosetKitError",
    "CosetPath",
    "DualHypergraph",
    "Group",
    "GroupSpec",
    "Hypergraph",
    "INNER",
    "NON_TRIVIAL",
    "SUITES",
    "acyclicity_level",
    "build_group",
    "catalog_entries",
    "catalog_group",
    "cayley_graph",
    "check_compatible",
    "check_two_distances",
    "chordless_to_coset",
    "compare_levels",
    "convex_closure",
    "convex_closure_cayley",
    "coset",
    "coset_to_chordless",
    "covering_map",
    "distance",
    "dual_hypergraph",
    "enumerate_paths",
    "find_coset_cycle",
    "find_min_path",
    "gen_set",
    "girth",
    "gyo_reduction",
    "hyperedge_distance",
    "is_2_acyclic",
    "is_alpha_acyclic",
    "is_n_acyclic",
    "load_spec",
    "non_t",
    "partition",
    "rho",
    "run_suite",
    "t_distance",
    "tree_decomposition",
    "verify_covering",
]
