"""One-period no-arbitrage at a node, for the prior set and for a single prior."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..geometry import null_space, ri_certificate, separating_vector
from ..logging_config import get_logger
from ..market import (
    Node,
    ProbVector,
    ScenarioTree,
    Vector,
    dot,
    is_relevant_path,
    node_key,
    relevant_nodes,
    support_D,
    support_E,
)
from ..market.codec import format_vector, parse_node_key, parse_vector

logger = get_logger(__name__)


@dataclass(frozen=True)
class LocalVerdict:
    """Outcome of the one-period test at a node.

    Exactly one of ``witness`` (a local arbitrage position) and
    ``certificate`` (strictly positive convex weights of the support points
    averaging to 0) is set.
    """

    node: Node
    holds: bool
    witness: Optional[Vector] = None
    certificate: Optional[tuple[Fraction, ...]] = None
    points: tuple[Vector, ...] = ()
    relevant: bool = True

    def problems(self) -> list[str]:
        issues = []
        if (self.witness is None) == (self.certificate is None):
            issues.append("exactly one of witness/certificate must be present")
        if self.witness is not None:
            products = [dot(self.witness, y) for y in self.points]
            if any(v < 0 for v in products):
                issues.append("witness is negative on a support point")
            if not any(v > 0 for v in products):
                issues.append("witness is not strictly positive anywhere")
        return issues

    def to_dict(self) -> dict:
        data = {"node": node_key(self.node), "holds": self.holds, "relevant": self.relevant}
        if self.witness is not None:
            data["witness"] = format_vector(self.witness)
        if self.certificate is not None:
            data["certificate"] = format_vector(self.certificate)
        data["points"] = [format_vector(y) for y in self.points]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "LocalVerdict":
        return cls(
            node=parse_node_key(data["node"]),
            holds=bool(data["holds"]),
            witness=parse_vector(data["witness"]) if "witness" in data else None,
            certificate=parse_vector(data["certificate"]) if "certificate" in data else None,
            points=tuple(parse_vector(y) for y in data.get("points", [])),
            relevant=bool(data.get("relevant", True)),
        )


def _verdict(node: Node, points: Sequence[Vector], relevant: bool) -> LocalVerdict:
    certificate = ri_certificate(points)
    if certificate is not None:
        return LocalVerdict(node, True, certificate=certificate, points=tuple(points), relevant=relevant)
    witness = separating_vector(points)
    return LocalVerdict(node, False, witness=witness, points=tuple(points), relevant=relevant)


def local_na(tree: ScenarioTree, node: Node) -> LocalVerdict:
    """NA of the local prior set: 0 in Ri(Conv(D)) at ``node``."""
    verdict = _verdict(node, support_D(tree, node), is_relevant_path(tree, node))
    logger.debug(f"local NA at {node_key(node)!r}: {verdict.holds}")
    return verdict


def single_node_na(tree: ScenarioTree, node: Node, p: ProbVector) -> LocalVerdict:
    """One-period NA(p) for a single measure: 0 in Ri(Conv(E(p)))."""
    return _verdict(node, support_E(tree, node, p), is_relevant_path(tree, node))


def null_strategies(tree: ScenarioTree, node: Node) -> list[Vector]:
    """Basis of positions h with h.dS = 0 quasi-surely at ``node``."""
    return null_space(support_D(tree, node), tree.asset_dim)


@dataclass(frozen=True)
class OmegaNA:
    """Depth-t nodes where local NA holds, and whether the rest is polar."""

    level: int
    nodes: tuple[Node, ...]
    complement_polar: bool

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "nodes": [node_key(n) for n in self.nodes],
            "complement_polar": self.complement_polar,
        }


def omega_na(tree: ScenarioTree, level: int) -> OmegaNA:
    if not 0 <= level < tree.horizon:
        raise ValueError(f"level must be in 0..{tree.horizon - 1}, got {level}")
    holding = tuple(node for node in tree.nodes(level) if local_na(tree, node).holds)
    members = set(holding)
    polar = all(node in members for node in relevant_nodes(tree, level))
    return OmegaNA(level, holding, polar)
