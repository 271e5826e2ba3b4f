"""Finite multi-prior market: scenario tree, priors, kernels and strategies."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Optional

Node = tuple[str, ...]
Path = tuple[str, ...]
Vector = tuple[Fraction, ...]


class TreeLookupError(KeyError):
    """Raised when a node or a child label does not exist in the tree."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown node"


def node_key(node: Node) -> str:
    """Canonical text key of a node: labels joined by '/', root = ''."""
    return "/".join(node)


@dataclass(frozen=True)
class ProbVector:
    """Exact probability vector indexed by the positions of a level alphabet."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, index: int) -> Fraction:
        return self.weights[index]

    @classmethod
    def dirac(cls, size: int, index: int) -> "ProbVector":
        return cls(tuple(Fraction(1) if i == index else Fraction(0) for i in range(size)))

    @classmethod
    def uniform(cls, size: int) -> "ProbVector":
        return cls(tuple(Fraction(1, size) for _ in range(size)))

    @classmethod
    def mixture(cls, vectors: list["ProbVector"], weights: tuple[Fraction, ...]) -> "ProbVector":
        """Convex combination sum_i weights[i] * vectors[i]."""
        size = len(vectors[0])
        return cls(tuple(
            sum((w * v[a] for w, v in zip(weights, vectors)), Fraction(0))
            for a in range(size)
        ))

    def support(self) -> tuple[int, ...]:
        """Indices charged with positive mass."""
        return tuple(i for i, w in enumerate(self.weights) if w > 0)

    def problems(self) -> list[str]:
        """Invariant violations of this vector (empty when it is a probability)."""
        issues = []
        if any(w < 0 for w in self.weights):
            issues.append("negative weight")
        if sum(self.weights, Fraction(0)) != 1:
            issues.append("weights sum != 1")
        return issues


@dataclass(frozen=True)
class ScenarioTree:
    """Product-structured finite tree with prices and local generator priors.

    ``alphabets[t]`` is the label set of level ``t + 1``; the nodes of depth
    ``t`` are all label tuples of length ``t``. ``priors[node]`` lists the
    generators whose convex hull is the local prior set at ``node``. The tree
    is never mutated after construction.
    """

    horizon: int
    asset_dim: int
    alphabets: tuple[tuple[str, ...], ...]
    prices: Mapping[Node, Vector] = field(default_factory=dict)
    priors: Mapping[Node, tuple[ProbVector, ...]] = field(default_factory=dict)

    def nodes(self, depth: int) -> Iterator[Node]:
        """All depth-``depth`` nodes in lexicographic alphabet order."""
        return itertools.product(*self.alphabets[:depth])

    def non_terminal_nodes(self) -> Iterator[Node]:
        for depth in range(self.horizon):
            yield from self.nodes(depth)

    def paths(self) -> Iterator[Path]:
        return self.nodes(self.horizon)

    def alphabet(self, node: Node) -> tuple[str, ...]:
        """Labels of the children of a non-terminal node."""
        self.require_non_terminal(node)
        return self.alphabets[len(node)]

    def label_index(self, node: Node, label: str) -> int:
        labels = self.alphabet(node)
        try:
            return labels.index(label)
        except ValueError:
            raise TreeLookupError(f"label {label!r} not in alphabet of level {len(node) + 1}") from None

    def is_node(self, node: Node) -> bool:
        if len(node) > self.horizon:
            return False
        return all(label in self.alphabets[t] for t, label in enumerate(node))

    def require_non_terminal(self, node: Node) -> None:
        if not self.is_node(node) or len(node) >= self.horizon:
            raise TreeLookupError(f"unknown non-terminal node {node_key(node)!r}")

    def price(self, node: Node) -> Vector:
        try:
            return self.prices[node]
        except KeyError:
            raise TreeLookupError(f"price absent at node {node_key(node)!r}") from None

    def generators(self, node: Node) -> tuple[ProbVector, ...]:
        self.require_non_terminal(node)
        try:
            return self.priors[node]
        except KeyError:
            raise TreeLookupError(f"priors absent at node {node_key(node)!r}") from None

    def zero_vector(self) -> Vector:
        return tuple(Fraction(0) for _ in range(self.asset_dim))


@dataclass(frozen=True)
class KernelSelection:
    """Per-node convex weights over the node's generators."""

    weights: Mapping[Node, tuple[Fraction, ...]]

    def at(self, node: Node) -> tuple[Fraction, ...]:
        try:
            return self.weights[node]
        except KeyError:
            raise TreeLookupError(f"kernel undefined at node {node_key(node)!r}") from None

    def measure(self, tree: ScenarioTree, node: Node) -> ProbVector:
        """The measure in the local prior set selected at ``node``."""
        return ProbVector.mixture(list(tree.generators(node)), self.at(node))

    def problems(self, tree: ScenarioTree) -> list[str]:
        """Nodes where the selection is missing or is not a convex weight vector."""
        issues = []
        for node in tree.non_terminal_nodes():
            weights = self.weights.get(node)
            key = node_key(node)
            if weights is None:
                issues.append(f"node {key!r}: kernel missing")
            elif len(weights) != len(tree.generators(node)):
                issues.append(f"node {key!r}: {len(weights)} weights for {len(tree.generators(node))} generators")
            elif any(w < 0 for w in weights) or sum(weights, Fraction(0)) != 1:
                issues.append(f"node {key!r}: weights are not convex")
        return issues

    @classmethod
    def vertex(cls, tree: ScenarioTree, choice: Optional[Mapping[Node, int]] = None) -> "KernelSelection":
        """Select one generator per node (the first one unless ``choice`` says otherwise)."""
        choice = choice or {}
        weights = {}
        for node in tree.non_terminal_nodes():
            count = len(tree.generators(node))
            picked = choice.get(node, 0)
            weights[node] = tuple(Fraction(1) if i == picked else Fraction(0) for i in range(count))
        return cls(weights)

    @classmethod
    def uniform(cls, tree: ScenarioTree) -> "KernelSelection":
        weights = {}
        for node in tree.non_terminal_nodes():
            count = len(tree.generators(node))
            weights[node] = tuple(Fraction(1, count) for _ in range(count))
        return cls(weights)


@dataclass(frozen=True)
class Strategy:
    """Initial capital plus one position vector per non-terminal node (zero-filled)."""

    positions: Mapping[Node, Vector]
    x: Fraction = Fraction(0)

    def position(self, node: Node, asset_dim: int) -> Vector:
        return self.positions.get(node, tuple(Fraction(0) for _ in range(asset_dim)))


def validate(tree: ScenarioTree) -> list[str]:
    """Return every invariant violation of ``tree`` with its node location.

    An empty list means the tree is well-formed. Violations are data, the
    function never raises for a malformed tree.
    """
    violations: list[str] = []
    if tree.horizon < 1:
        violations.append(f"horizon must be positive, got {tree.horizon}")
    if tree.asset_dim < 1:
        violations.append(f"asset_dim must be positive, got {tree.asset_dim}")
    if len(tree.alphabets) != tree.horizon:
        violations.append(f"expected {tree.horizon} alphabets, got {len(tree.alphabets)}")
        return violations
    for t, labels in enumerate(tree.alphabets):
        if not labels:
            violations.append(f"alphabet {t + 1} is empty")
        if len(set(labels)) != len(labels):
            violations.append(f"alphabet {t + 1} has duplicate labels")
        if any(label == "" for label in labels):
            violations.append(f"alphabet {t + 1} has an empty label")
        if any("/" in label for label in labels):
            violations.append(f"alphabet {t + 1} has a label containing '/'")
    if violations:
        return violations

    for depth in range(tree.horizon + 1):
        for node in tree.nodes(depth):
            key = node_key(node)
            price = tree.prices.get(node)
            if price is None:
                violations.append(f"node {key!r}: price absent")
            elif len(price) != tree.asset_dim:
                violations.append(f"node {key!r}: price has dimension {len(price)}, expected {tree.asset_dim}")
            elif not all(isinstance(v, Fraction) for v in price):
                violations.append(f"node {key!r}: price is not exact rational")
            if depth == tree.horizon:
                continue
            generators = tree.priors.get(node)
            if not generators:
                violations.append(f"node {key!r}: no generator priors")
                continue
            for g_index, generator in enumerate(generators):
                where = f"node {key!r} generator {g_index}"
                if len(generator) != len(tree.alphabets[depth]):
                    violations.append(f"{where}: {len(generator)} weights for alphabet of size {len(tree.alphabets[depth])}")
                    continue
                violations.extend(f"{where}: {issue}" for issue in generator.problems())

    known = {node for depth in range(tree.horizon + 1) for node in tree.nodes(depth)}
    for node in tree.prices:
        if node not in known:
            violations.append(f"node {node_key(node)!r}: price given for unknown node")
    for node in tree.priors:
        if node not in known or len(node) >= tree.horizon:
            violations.append(f"node {node_key(node)!r}: priors given for unknown or terminal node")
    return violations
