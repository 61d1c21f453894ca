"""Graph-minor packing/covering toolkit.

Thin wrapper over the C++ core: exact pathwidth, minor-model search,
packing/covering oracles, the linear packing-covering duality driver, and the
bounded-deletion pathwidth FPT routine.
"""

from ._core import (
    BudgetExceededError,
    CapExceededError,
    ConstantOverflowError,
    Graph,
    connected_components,
    ep_duality,
    exact_pathwidth,
    find_model,
    find_rooted_model,
    forest_transversal,
    fpt_pw_deletion,
    graph_digest,
    klogk_transversal,
    minimal_pw_subgraph,
    named_graph,
    nu_exact,
    pathwidth_at_most,
    tau_exact,
)

__all__ = [
    "BudgetExceededError",
    "CapExceededError",
    "ConstantOverflowError",
    "Graph",
    "connected_components",
    "ep_duality",
    "exact_pathwidth",
    "find_model",
    "find_rooted_model",
    "forest_transversal",
    "fpt_pw_deletion",
    "graph_digest",
    "klogk_transversal",
    "minimal_pw_subgraph",
    "named_graph",
    "nu_exact",
    "pathwidth_at_most",
    "tau_exact",
]

__version__ = "0.1.0"
