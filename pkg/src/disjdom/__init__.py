"""Exact disjunctive domination in trees and verification of its extremal bounds."""

from .enumeration import all_trees, random_tree
from .errors import DisjDomError
from .families import (
    FamilyCatalog,
    LabeledTree,
    apply_O1,
    apply_O2,
    apply_O3,
    apply_O4,
    audit_T1,
    audit_T2,
    base_tree,
    corresponding_vertices,
    enumerate_family,
    labeled_canonical_form,
    membership,
    near_witness,
    sa_set,
)
from .solver import (
    SolveResult,
    check_2dd_set,
    enumerate_min_2dd_sets,
    gamma_d2,
    gamma_d2_bnb,
    gamma_d2_brute,
    is_2dd_set,
    is_dominating_set,
    leafless_min_witness,
)
from .tree import Tree, canonical_form, distances_from, from_prufer, metrics, parse_tree, to_prufer

__version__ = "0.1.0"
