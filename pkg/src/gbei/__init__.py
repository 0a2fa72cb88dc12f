"""Generalized binomial edge ideals J_{K_m,G} and their regularity."""

from .cograph import CographError, Cotree, cotree, has_induced_p4, join_split
from .graph import Graph, GraphError, make_named, parse_graph6, write_graph6
from .groebner import groebner_basis, ideal_equal, intersect_all
from .homology import BettiTable, HomologicalSummary, betti_table, homological_summary
from .poly import Field, Ideal, gbei_generators
from .primedec import cut_sets, cut_sets_of_join, krull_dimension, prime_components, prime_generators
from .regularity import (
    Classification,
    RegularityResult,
    classify,
    classify_cm_reg2,
    classify_extremal_gorenstein,
    classify_reg2,
    construct_with_regularity,
    reg,
    reg_bounds,
    reg_formula,
)

__version__ = "0.1.0"

__all__ = [
    "BettiTable", "Classification", "CographError", "Cotree", "Field", "Graph", "GraphError",
    "HomologicalSummary", "Ideal", "RegularityResult", "betti_table", "classify", "classify_cm_reg2",
    "classify_extremal_gorenstein", "classify_reg2", "construct_with_regularity", "cotree",
    "cut_sets", "cut_sets_of_join", "gbei_generators", "groebner_basis", "has_induced_p4",
    "homological_summary", "ideal_equal", "intersect_all", "join_split", "krull_dimension",
    "make_named", "parse_graph6", "prime_components", "prime_generators", "reg", "reg_bounds",
    "reg_formula", "write_graph6",
]
