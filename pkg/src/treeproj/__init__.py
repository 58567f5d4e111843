"""Tree projections of hypergraph pairs, the Robber and Captain game, and width deciders."""

from .errors import (ComponentTreeError, ConnectednessError, DecompositionError, JoinTreeError,
                     StrategyError, TreeProjectionError, Violation)
from .game import (Configuration, GameNode, GameTree, Position, brute_solve, check_strategy, escape_door,
                   initial, is_monotone, legal_moves, monotonize, robber_components, solve, strategy_size,
                   unfold, verify_strategy)
from .hypergraph import (Component, Hypergraph, border, clusters_tk, contained_in, frontier, gaifman,
                         induced_is_connected, is_reduced, leq, power_k, properly_contained, reduce, touches,
                         v_components, v_path_exists)
from .jointrees import (HypertreeDecomposition, JoinTree, TreeDecomposition, build_join_tree,
                        hypertree_from_join_tree, is_acyclic, is_component_tree, is_h1_connected,
                        is_normal_form, is_sh07_connected, verify_hypertree_decomposition, verify_join_tree,
                        verify_tree_decomposition)
from .treeprojection import (TPInstance, TPReport, brute_force_tp, certify_minimal, check_minimality_conditions,
                             construct_component_tree, find_tp, ghw_decide, is_tree_projection, minimize,
                             strategy_to_tp, tp_exists_brute, tp_to_strategy, tw_decide)

__all__ = [
    "ComponentTreeError",
    "ConnectednessError",
    "DecompositionError",
    "JoinTreeError",
    "StrategyError",
    "TreeProjectionError",
    "Violation",
    "Configuration",
    "GameNode",
    "GameTree",
    "Position",
    "brute_solve",
    "check_strategy",
    "escape_door",
    "initial",
    "is_monotone",
    "legal_moves",
    "monotonize",
    "robber_components",
    "solve",
    "strategy_size",
    "unfold",
    "verify_strategy",
    "Component",
    "Hypergraph",
    "border",
    "clusters_tk",
    "contained_in",
    "frontier",
    "gaifman",
    "induced_is_connected",
    "is_reduced",
    "leq",
    "power_k",
    "properly_contained",
    "reduce",
    "touches",
    "v_components",
    "v_path_exists",
    "HypertreeDecomposition",
    "JoinTree",
    "TreeDecomposition",
    "build_join_tree",
    "hypertree_from_join_tree",
    "is_acyclic",
    "is_component_tree",
    "is_h1_connected",
    "is_normal_form",
    "is_sh07_connected",
    "verify_hypertree_decomposition",
    "verify_join_tree",
    "verify_tree_decomposition",
    "TPInstance",
    "TPReport",
    "brute_force_tp",
    "certify_minimal",
    "check_minimality_conditions",
    "construct_component_tree",
    "find_tp",
    "ghw_decide",
    "is_tree_projection",
    "minimize",
    "strategy_to_tp",
    "tp_exists_brute",
    "tp_to_strategy",
    "tw_decide",
]

__version__ = "0.1.0"
