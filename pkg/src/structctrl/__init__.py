"""Structural controllability of binary linearly parameterized pairs (A, B)."""

__version__ = "0.1.0"

from .analysis import AnalysisReport, analyze
from .instances import generate_random, load_instance, parse_instance, serialize_instance
from .model import InstanceError, ParamPair, SCGraph, SizeLimitExceeded, build_pair, graph_of_pair, pair_of_graph, validate_scg
from .oracle import structurally_controllable_randomized
from .rank import generic_rank_matroid, generic_rank_minform
from .reach import build_cactus_union, spanning_forest_rooted
from .subgraphs import count_classes, enumerate_mcs, has_unbalanced_class, similarity_classes
from .transfer import build_transfer_graph, corfmat_test

__all__ = [
    "AnalysisReport",
    "InstanceError",
    "ParamPair",
    "SCGraph",
    "SizeLimitExceeded",
    "analyze",
    "build_cactus_union",
    "build_pair",
    "build_transfer_graph",
    "corfmat_test",
    "count_classes",
    "enumerate_mcs",
    "generate_random",
    "generic_rank_matroid",
    "generic_rank_minform",
    "graph_of_pair",
    "has_unbalanced_class",
    "load_instance",
    "pair_of_graph",
    "parse_instance",
    "serialize_instance",
    "similarity_classes",
    "spanning_forest_rooted",
    "structurally_controllable_randomized",
    "validate_scg",
]
