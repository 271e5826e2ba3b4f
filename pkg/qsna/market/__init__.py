"""Market core - the finite multi-prior market and its supports."""

from .tree import (
    KernelSelection,
    Node,
    Path,
    ProbVector,
    ScenarioTree,
    Strategy,
    TreeLookupError,
    Vector,
    node_key,
    validate,
)
from .supports import (
    charged_nodes,
    delta_S,
    dot,
    is_relevant_path,
    path_probability,
    quasi_sure_geq,
    relevant_children,
    relevant_continuations,
    relevant_nodes,
    relevant_paths,
    support_D,
    support_DP,
    support_E,
    value_process,
)
from .codec import InstanceFormatError

__all__ = [
    "KernelSelection",
    "Node",
    "Path",
    "ProbVector",
    "ScenarioTree",
    "Strategy",
    "TreeLookupError",
    "Vector",
    "node_key",
    "validate",
    "charged_nodes",
    "delta_S",
    "dot",
    "is_relevant_path",
    "path_probability",
    "quasi_sure_geq",
    "relevant_children",
    "relevant_continuations",
    "relevant_nodes",
    "relevant_paths",
    "support_D",
    "support_DP",
    "support_E",
    "value_process",
    "InstanceFormatError",
]
