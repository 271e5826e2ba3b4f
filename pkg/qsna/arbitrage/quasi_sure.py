"""Multi-period quasi-sure and single-prior no-arbitrage, witness extraction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from ..geometry import ri_conv_contains_zero
from ..logging_config import get_logger
from ..market import (
    KernelSelection,
    Node,
    Path,
    ScenarioTree,
    Strategy,
    Vector,
    charged_nodes,
    delta_S,
    dot,
    is_relevant_path,
    node_key,
    path_probability,
    relevant_continuations,
    relevant_nodes,
    relevant_paths,
    support_D,
    support_DP,
    value_process,
)
from ..market.codec import (
    InstanceFormatError,
    kernels_from_dict,
    kernels_to_dict,
    parse_path,
    strategy_from_dict,
    strategy_to_dict,
)
from ..market.supports import PathFunction, as_path_function
from .local import local_na

logger = get_logger(__name__)


class NotRelevantError(ValueError):
    """Raised when a failing node is polar and so cannot be monetized."""


@dataclass(frozen=True)
class ArbitrageWitness:
    """Strategy, witness measure and a path of strict profit."""

    strategy: Strategy
    kernels: KernelSelection
    profit_path: Path

    def to_dict(self) -> dict:
        return {
            "strategy": strategy_to_dict(self.strategy),
            "kernels": kernels_to_dict(self.kernels),
            "profit_path": list(self.profit_path),
        }

    @classmethod
    def from_dict(cls, data: Any) -> "ArbitrageWitness":
        if not isinstance(data, dict):
            raise InstanceFormatError("witness must be an object", "$")
        for key in ("strategy", "kernels", "profit_path"):
            if key not in data:
                raise InstanceFormatError(f"missing key {key!r}", "$")
        return cls(
            strategy=strategy_from_dict(data["strategy"], "$.strategy"),
            kernels=kernels_from_dict(data["kernels"], "$.kernels"),
            profit_path=parse_path(data["profit_path"], "$.profit_path"),
        )


def global_na(tree: ScenarioTree) -> bool:
    """NA(Q^T): local NA at every relevant node of every level."""
    for t in range(tree.horizon):
        for node in relevant_nodes(tree, t):
            if not local_na(tree, node).holds:
                logger.debug(f"global NA fails at relevant node {node_key(node)!r}")
                return False
    return True


def _charging_generator(tree: ScenarioTree, node: Node, label: str) -> tuple[Fraction, ...]:
    """Dirac weights on the first generator charging ``label``."""
    a = tree.label_index(node, label)
    generators = tree.generators(node)
    index = next(i for i, g in enumerate(generators) if g[a] > 0)
    return tuple(Fraction(1) if i == index else Fraction(0) for i in range(len(generators)))


def extract_arbitrage(tree: ScenarioTree, node: Node, h: Vector) -> ArbitrageWitness:
    """Lift a local arbitrage ``h`` at a relevant ``node`` to a multi-period witness."""
    if not is_relevant_path(tree, node):
        raise NotRelevantError(f"node {node_key(node)!r} is polar: its failure cannot be monetized")
    products = [dot(h, y) for y in support_D(tree, node)]
    if any(v < 0 for v in products) or not any(v > 0 for v in products):
        raise ValueError(f"h is not a local arbitrage at node {node_key(node)!r}")

    weights = dict(KernelSelection.vertex(tree).weights)
    for t in range(len(node)):
        weights[node[:t]] = _charging_generator(tree, node[:t], node[t])

    labels = tree.alphabet(node)
    generators = tree.generators(node)
    profit_label = next(
        label for a, label in enumerate(labels)
        if any(g[a] > 0 for g in generators) and dot(h, delta_S(tree, node, label)) > 0
    )
    weights[node] = _charging_generator(tree, node, profit_label)
    kernels = KernelSelection(weights)

    path = node + (profit_label,)
    while len(path) < tree.horizon:
        measure = kernels.measure(tree, path)
        path = path + (tree.alphabet(path)[measure.support()[0]],)

    logger.debug(f"arbitrage at {node_key(node)!r} lifted with profit path {node_key(path)!r}")
    return ArbitrageWitness(Strategy({node: tuple(h)}), kernels, path)


def find_arbitrage(tree: ScenarioTree) -> Optional[ArbitrageWitness]:
    """Witness for the first failing relevant node (level, then lexicographic order)."""
    for t in range(tree.horizon):
        for node in relevant_nodes(tree, t):
            verdict = local_na(tree, node)
            if not verdict.holds:
                return extract_arbitrage(tree, node, verdict.witness)
    return None


def verify_witness(tree: ScenarioTree, witness: ArbitrageWitness) -> list[str]:
    """Exact re-check of a witness against ``tree`` (empty list = valid)."""
    problems = []
    path = witness.profit_path
    if len(path) != tree.horizon or not tree.is_node(path):
        return [f"profit path {node_key(path)!r} is not a terminal path of the instance"]
    for node, position in witness.strategy.positions.items():
        if not tree.is_node(node) or len(node) >= tree.horizon:
            problems.append(f"position given at unknown node {node_key(node)!r}")
        elif len(position) != tree.asset_dim:
            problems.append(f"position at {node_key(node)!r} has wrong dimension")
    problems.extend(witness.kernels.problems(tree))
    if problems:
        return problems

    zero_capital = Strategy(witness.strategy.positions)
    for omega in relevant_paths(tree):
        if value_process(tree, zero_capital, omega)[-1] < 0:
            problems.append(f"terminal value negative on relevant path {node_key(omega)!r}")
    if path_probability(tree, witness.kernels, path) <= 0:
        problems.append("profit path has zero probability under the witness measure")
    if value_process(tree, zero_capital, path)[-1] <= 0:
        problems.append("terminal value is not strictly positive on the profit path")
    return problems


def single_prior_na(tree: ScenarioTree, kernels: KernelSelection) -> bool:
    """NA(P) for the product measure of ``kernels``: 0 in Ri(Conv(D_P)) P-a.s."""
    for t in range(tree.horizon):
        for node in charged_nodes(tree, kernels, t):
            if not ri_conv_contains_zero(support_DP(tree, kernels, node)):
                logger.debug(f"single-prior NA fails at {node_key(node)!r}")
                return False
    return True


@dataclass(frozen=True)
class SectionResult:
    """Depth-t nodes whose relevant continuations all have f >= 0."""

    level: int
    nodes: tuple[Node, ...]
    complement_polar: bool


def section_positive(tree: ScenarioTree, f: PathFunction, level: int) -> SectionResult:
    if not 0 <= level < tree.horizon:
        raise ValueError(f"level must be in 0..{tree.horizon - 1}, got {level}")
    func = as_path_function(f)
    members = tuple(
        node for node in tree.nodes(level)
        if all(func(path) >= 0 for path in relevant_continuations(tree, node))
    )
    selected = set(members)
    polar = all(node in selected for node in relevant_nodes(tree, level))
    return SectionResult(level, members, polar)
