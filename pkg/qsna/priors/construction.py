"""Construction of the certifying priors p-hat and P*."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from ..arbitrage import local_na
from ..geometry import (
    GeometryError,
    LinearProgram,
    Relation,
    aff_equal,
    affine_hull,
    lp_solve,
    normalize,
    ri_conv_contains_zero,
    separating_vector,
    span_basis,
)
from ..geometry.convex import combine
from ..logging_config import get_logger
from ..market import (
    KernelSelection,
    Node,
    ProbVector,
    ScenarioTree,
    Vector,
    delta_S,
    dot,
    node_key,
    relevant_nodes,
    support_D,
    support_DP,
    support_E,
)
from ..market.codec import InstanceFormatError, kernels_from_dict, kernels_to_dict, parse_node_key

logger = get_logger(__name__)

METHODS = ("mixture", "greedy")


class LocalNAError(ValueError):
    """Raised when a construction needs local NA at a node where it fails."""


class PriorOutsideHullError(ValueError):
    """Raised when a measure is not in the convex hull of the node generators."""


def hull_weights(tree: ScenarioTree, node: Node, p: ProbVector) -> Optional[tuple[Fraction, ...]]:
    """Convex weights over the generators reproducing ``p``, or None if p is outside the hull."""
    generators = tree.generators(node)
    n = len(generators)
    lp = LinearProgram(tuple([Fraction(0)] * n))
    for a in range(len(p)):
        lp.add([g[a] for g in generators], Relation.EQ, p[a])
    lp.add([Fraction(1)] * n, Relation.EQ, Fraction(1))
    result = lp_solve(lp)
    return result.solution if result.is_optimal else None


@dataclass(frozen=True)
class QBarMembership:
    """Whether p charges {h.dS < 0} for every nonzero h in the span of D."""

    node: Node
    prior: ProbVector
    in_qbar: bool
    counterexample: Optional[Vector] = None

    def problems(self, tree: ScenarioTree) -> list[str]:
        if self.in_qbar:
            return [] if self.counterexample is None else ["member carries a counterexample"]
        h = self.counterexample
        issues = []
        if h is None or all(v == 0 for v in h):
            return ["counterexample missing or zero"]
        basis = span_basis(support_D(tree, self.node))
        if not affine_hull([tuple(Fraction(0) for _ in h)] + basis).contains(h):
            issues.append("counterexample outside the span of D")
        labels = tree.alphabet(self.node)
        if any(dot(h, delta_S(tree, self.node, labels[a])) < 0 for a in self.prior.support()):
            issues.append("prior charges {h.dS < 0}")
        return issues


def qbar_member(tree: ScenarioTree, node: Node, p: ProbVector) -> QBarMembership:
    """Decide membership of ``p`` in Q-bar at ``node`` by 2*dim bounded LPs."""
    if hull_weights(tree, node, p) is None:
        raise PriorOutsideHullError(f"prior is outside the generator hull at node {node_key(node)!r}")
    basis = span_basis(support_D(tree, node))
    points = support_E(tree, node, p)
    k = len(basis)
    products = [[dot(b, y) for b in basis] for y in points]
    for j in range(k):
        for sign in (Fraction(1), Fraction(-1)):
            objective = [Fraction(0)] * k
            objective[j] = sign
            lp = LinearProgram(tuple(objective), bounds=[(Fraction(-1), Fraction(1))] * k)
            for row in products:
                lp.add(row, Relation.GE, Fraction(0))
            result = lp_solve(lp)
            if result.value > 0:
                h = normalize(combine(result.solution, basis, tree.asset_dim))
                return QBarMembership(node, p, False, h)
    return QBarMembership(node, p, True)


def improve_prior(tree: ScenarioTree, node: Node, p: ProbVector, q: ProbVector) -> ProbVector:
    """(p + q) / 2: its support is the union of both supports."""
    tree.require_non_terminal(node)
    return ProbVector.mixture([p, q], (Fraction(1, 2), Fraction(1, 2)))


def _halfway(weights: tuple[Fraction, ...], index: int) -> tuple[Fraction, ...]:
    return tuple((w + (1 if i == index else 0)) / 2 for i, w in enumerate(weights))


def _check_phat(tree: ScenarioTree, node: Node, p: ProbVector) -> None:
    points = support_E(tree, node, p)
    if not aff_equal(affine_hull(points), affine_hull(support_D(tree, node))):
        raise GeometryError(f"Aff(E(p-hat)) != Aff(D) at node {node_key(node)!r}")
    if not ri_conv_contains_zero(points):
        raise GeometryError(f"0 not in Ri(Conv(E(p-hat))) at node {node_key(node)!r}")


def _greedy_weights(tree: ScenarioTree, node: Node) -> tuple[Fraction, ...]:
    generators = tree.generators(node)
    target = affine_hull(support_D(tree, node))
    weights = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(len(generators)))
    while True:
        measure = ProbVector.mixture(list(generators), weights)
        points = support_E(tree, node, measure)
        current = affine_hull(points)
        if aff_equal(current, target) and ri_conv_contains_zero(points):
            return weights
        # raise the dimension first, then push into the relative interior
        index = next(
            (i for i, g in enumerate(generators)
             if any(not current.contains(y) for y in support_E(tree, node, g))),
            None,
        )
        if index is None:
            h = separating_vector(points)
            index = next(
                (i for i, g in enumerate(generators)
                 if any(dot(h, y) < 0 for y in support_E(tree, node, g))),
                None,
            )
        if index is None:
            raise GeometryError(f"greedy construction stalled at node {node_key(node)!r}")
        weights = _halfway(weights, index)


def phat_weights(tree: ScenarioTree, node: Node, method: str = "mixture") -> tuple[Fraction, ...]:
    """Generator weights of p-hat at a node where local NA holds."""
    _check_method(method)
    if not local_na(tree, node).holds:
        raise LocalNAError(f"NA fails at node {node_key(node)!r}")
    return _phat_weights(tree, node, method)


def _check_method(method: str) -> None:
    if method not in METHODS:
        raise ValueError(f"unknown construction method {method!r}, expected one of {METHODS}")


def _phat_weights(tree: ScenarioTree, node: Node, method: str) -> tuple[Fraction, ...]:
    count = len(tree.generators(node))
    if method == "mixture":
        weights = tuple(Fraction(1, count) for _ in range(count))
    else:
        weights = _greedy_weights(tree, node)
    _check_phat(tree, node, ProbVector.mixture(list(tree.generators(node)), weights))
    return weights


def construct_phat(tree: ScenarioTree, node: Node, method: str = "mixture") -> ProbVector:
    """A prior with Aff(E(p)) = Aff(D) and 0 in Ri(Conv(E(p)))."""
    return ProbVector.mixture(list(tree.generators(node)), phat_weights(tree, node, method))


@dataclass(frozen=True)
class NodeCheck:
    node: Node
    aff_match: bool
    ri_zero: bool

    @property
    def passed(self) -> bool:
        return self.aff_match and self.ri_zero


@dataclass
class PStarCertificate:
    """Kernels of P* and the per-node checks of the characterization."""

    kernels: KernelSelection
    checks: list[NodeCheck] = field(default_factory=list)
    method: str = "mixture"

    @property
    def valid(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failing_nodes(self) -> list[Node]:
        return [check.node for check in self.checks if not check.passed]

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "method": self.method,
            "kernels": kernels_to_dict(self.kernels),
            "checks": [
                {"node": node_key(c.node), "aff_match": c.aff_match, "ri_zero": c.ri_zero}
                for c in self.checks
            ],
            "failing_nodes": [node_key(n) for n in self.failing_nodes],
        }

    @classmethod
    def from_dict(cls, data: Any) -> "PStarCertificate":
        if not isinstance(data, dict) or "kernels" not in data:
            raise InstanceFormatError("certificate must be an object with kernels", "$")
        return cls(
            kernels=kernels_from_dict(data["kernels"], "$.kernels"),
            checks=[
                NodeCheck(parse_node_key(c["node"]), bool(c["aff_match"]), bool(c["ri_zero"]))
                for c in data.get("checks", [])
            ],
            method=str(data.get("method", "mixture")),
        )


def construct_pstar(tree: ScenarioTree, method: str = "mixture") -> PStarCertificate:
    """P* from p-hat where local NA holds and the first generator elsewhere.

    The certificate is valid exactly when NA(Q^T) holds.
    """
    _check_method(method)
    weights = {}
    for node in tree.non_terminal_nodes():
        if local_na(tree, node).holds:
            weights[node] = _phat_weights(tree, node, method)
        else:
            count = len(tree.generators(node))
            weights[node] = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(count))
    kernels = KernelSelection(weights)

    certificate = PStarCertificate(kernels, method=method)
    for t in range(tree.horizon):
        for node in relevant_nodes(tree, t):
            points = support_DP(tree, kernels, node)
            aff_match = aff_equal(affine_hull(points), affine_hull(support_D(tree, node)))
            certificate.checks.append(NodeCheck(node, aff_match, ri_conv_contains_zero(points)))
    logger.debug(f"P* certificate ({method}): valid={certificate.valid}, {len(certificate.checks)} nodes checked")
    return certificate
