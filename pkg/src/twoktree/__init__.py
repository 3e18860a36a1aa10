"""Spanning trees with no vertex degree in [2, k].

Graph quantities and hypothesis checks, certificates with independent validation, an
exact backtracking solver, a constructive builder with a checked trace, and graph
families for experiments.
"""

from .certificate import ContractError, TreeCertificate, TreeKind, classify, glue, induced_path
from .constructive import (
    HypothesisError,
    ProofInvariantError,
    ProofTrace,
    attach_component,
    case_w_connected,
    case_w_disconnected,
    component_solver,
    construct_2k_st,
    extend_semi_tree,
)
from .families import CASE_LABELS, ExtremalParams, build_h, case_family, random_graph
from .graph import (
    COMPLETE,
    Graph,
    GraphError,
    HypothesisReport,
    ParseError,
    components,
    degree,
    hypothesis_report,
    is_connected,
    nc_value,
    neighborhood_union,
    parse_edge_list,
    read_graph,
    sigma_value,
)
from .kernels import BACKEND
from .solver import DenseOracleError, SearchBudget, SolveOutcome, solve_dense, solve_exact, solve_naive
from .thresholds import Thresholds, c_k, dense_condition, thresholds

__version__ = "0.1.0"
