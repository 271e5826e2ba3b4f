"""Price increments, supports, relevance and quasi-sure evaluation on a tree."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Union

from .tree import KernelSelection, Node, Path, ProbVector, ScenarioTree, Strategy, TreeLookupError, Vector, node_key

PathFunction = Union[Mapping[Path, Fraction], Callable[[Path], Fraction]]


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def delta_S(tree: ScenarioTree, node: Node, label: str) -> Vector:
    """Price increment S_{t+1}(node, label) - S_t(node)."""
    tree.label_index(node, label)
    child = tree.price(node + (label,))
    parent = tree.price(node)
    return tuple(c - p for c, p in zip(child, parent))


def value_process(tree: ScenarioTree, strategy: Strategy, path: Path) -> list[Fraction]:
    """Portfolio values V_0..V_T of ``strategy`` along a terminal ``path``."""
    if len(path) != tree.horizon or not tree.is_node(path):
        raise TreeLookupError(f"not a terminal path: {node_key(path)!r}")
    values = [Fraction(strategy.x)]
    for t in range(tree.horizon):
        node = path[:t]
        step = dot(strategy.position(node, tree.asset_dim), delta_S(tree, node, path[t]))
        values.append(values[-1] + step)
    return values


def _dedupe(points: list[Vector]) -> tuple[Vector, ...]:
    return tuple(dict.fromkeys(points))


def support_E(tree: ScenarioTree, node: Node, p: ProbVector) -> tuple[Vector, ...]:
    """Increments charged by ``p`` at ``node``, deduplicated, in alphabet order."""
    labels = tree.alphabet(node)
    return _dedupe([delta_S(tree, node, labels[a]) for a in p.support()])


def relevant_children(tree: ScenarioTree, node: Node) -> tuple[str, ...]:
    """Children charged by at least one generator."""
    labels = tree.alphabet(node)
    generators = tree.generators(node)
    return tuple(
        label for a, label in enumerate(labels)
        if any(g[a] > 0 for g in generators)
    )


def support_D(tree: ScenarioTree, node: Node) -> tuple[Vector, ...]:
    """Quasi-sure support: union of the generator supports."""
    return _dedupe([delta_S(tree, node, label) for label in relevant_children(tree, node)])


def support_DP(tree: ScenarioTree, kernels: KernelSelection, node: Node) -> tuple[Vector, ...]:
    """Support of the increment under the kernel selected at ``node``."""
    return support_E(tree, node, kernels.measure(tree, node))


def is_relevant_path(tree: ScenarioTree, prefix: Node) -> bool:
    """True iff every edge of ``prefix`` is charged by some generator of its parent."""
    if not tree.is_node(prefix):
        raise TreeLookupError(f"unknown node {node_key(prefix)!r}")
    return all(prefix[t] in relevant_children(tree, prefix[:t]) for t in range(len(prefix)))


def relevant_nodes(tree: ScenarioTree, depth: int) -> list[Node]:
    """Relevant depth-``depth`` prefixes (the non-polar nodes) in lexicographic order."""
    level: list[Node] = [()]
    for _ in range(depth):
        level = [node + (label,) for node in level for label in relevant_children(tree, node)]
    return level


def relevant_paths(tree: ScenarioTree) -> list[Path]:
    return relevant_nodes(tree, tree.horizon)


def relevant_continuations(tree: ScenarioTree, node: Node) -> list[Path]:
    """Terminal paths extending ``node`` whose edges below ``node`` are all relevant."""
    level = [node]
    for _ in range(len(node), tree.horizon):
        level = [n + (label,) for n in level for label in relevant_children(tree, n)]
    return level


def edge_mass(tree: ScenarioTree, kernels: KernelSelection, node: Node, label: str) -> Fraction:
    return kernels.measure(tree, node)[tree.label_index(node, label)]


def path_probability(tree: ScenarioTree, kernels: KernelSelection, path: Path) -> Fraction:
    """Mass of ``path`` (or of a prefix cylinder) under the product of the kernels."""
    mass = Fraction(1)
    for t, label in enumerate(path):
        mass *= edge_mass(tree, kernels, path[:t], label)
        if mass == 0:
            break
    return mass


def charged_nodes(tree: ScenarioTree, kernels: KernelSelection, depth: int) -> list[Node]:
    """Depth-``depth`` prefixes with positive probability under the kernels."""
    level: list[Node] = [()]
    for _ in range(depth):
        nxt = []
        for node in level:
            measure = kernels.measure(tree, node)
            nxt.extend(node + (label,) for a, label in enumerate(tree.alphabet(node)) if measure[a] > 0)
        level = nxt
    return level


def as_path_function(f: PathFunction) -> Callable[[Path], Fraction]:
    if callable(f):
        return f
    return lambda path: f[path]


def quasi_sure_geq(tree: ScenarioTree, f: PathFunction, bound: Fraction) -> bool:
    """True iff f >= bound on every relevant path (quasi-surely)."""
    func = as_path_function(f)
    return all(func(path) >= bound for path in relevant_paths(tree))
