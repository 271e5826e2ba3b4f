"""The arbitrage-free class P^T built around P*, its sampler and domination."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..logging_config import get_logger
from ..market import KernelSelection, Node, Path, ScenarioTree, relevant_children, relevant_paths
from ..market.codec import format_rational, kernels_to_dict

logger = get_logger(__name__)

# Candidate mixture weights for the class sampler.
CLASS_WEIGHTS = (Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))

# Kernel weights drawn by random_kernels live on this grid.
WEIGHT_GRID = 4


def _check_weights(tree: ScenarioTree, ells: Sequence[Fraction]) -> list[Fraction]:
    if len(ells) != tree.horizon:
        raise ValueError(f"expected {tree.horizon} mixture weights, got {len(ells)}")
    checked = [Fraction(ell) for ell in ells]
    for t, ell in enumerate(checked):
        if not 0 < ell <= 1:
            raise ValueError(f"mixture weight at level {t} must lie in (0, 1], got {ell}")
    return checked


def class_member(
    tree: ScenarioTree,
    pstar: KernelSelection,
    ells: Sequence[Fraction],
    q: KernelSelection,
) -> KernelSelection:
    """Per node at depth t: ell_t * p* + (1 - ell_t) * q, in generator weights."""
    checked = _check_weights(tree, ells)
    weights = {}
    for node in tree.non_terminal_nodes():
        ell = checked[len(node)]
        weights[node] = tuple(ell * w + (1 - ell) * v for w, v in zip(pstar.at(node), q.at(node)))
    return KernelSelection(weights)


def dominating_member(tree: ScenarioTree, pstar: KernelSelection, q: KernelSelection) -> KernelSelection:
    """Class member with ell = 1/2 everywhere; every path keeps at least 2^-T of its q-mass."""
    return class_member(tree, pstar, [Fraction(1, 2)] * tree.horizon, q)


def _class_children(tree: ScenarioTree, pstar: KernelSelection, node: Node) -> tuple[str, ...]:
    measure = pstar.measure(tree, node)
    charged = set(relevant_children(tree, node))
    return tuple(
        label for a, label in enumerate(tree.alphabet(node))
        if measure[a] > 0 or label in charged
    )


def class_relevant_paths(tree: ScenarioTree, pstar: KernelSelection) -> list[Path]:
    """Paths charged by some member of the class built around ``pstar``."""
    level: list[Node] = [()]
    for _ in range(tree.horizon):
        level = [node + (label,) for node in level for label in _class_children(tree, pstar, node)]
    return level


def polar_sets_equal(tree: ScenarioTree, pstar: KernelSelection) -> bool:
    """True iff the class around ``pstar`` and Q^T charge the same paths."""
    issues = pstar.problems(tree)
    if issues:
        raise ValueError(f"invalid kernel selection: {issues[0]}")
    equal = set(class_relevant_paths(tree, pstar)) == set(relevant_paths(tree))
    if not equal:
        logger.debug("class around P* charges paths outside the relevant set")
    return equal


def _grid_weights(rng: random.Random, count: int) -> tuple[Fraction, ...]:
    # Nonnegative integer draws, rejected until some mass is present.
    while True:
        raw = [rng.randint(0, WEIGHT_GRID) for _ in range(count)]
        total = sum(raw)
        if total:
            return tuple(Fraction(r, total) for r in raw)


def random_kernels(tree: ScenarioTree, rng: random.Random, vertex: bool = False) -> KernelSelection:
    """Random kernel selection; ``vertex`` picks a single generator per node."""
    if vertex:
        choice = {node: rng.randrange(len(tree.generators(node))) for node in tree.non_terminal_nodes()}
        return KernelSelection.vertex(tree, choice)
    return KernelSelection({
        node: _grid_weights(rng, len(tree.generators(node)))
        for node in tree.non_terminal_nodes()
    })


@dataclass(frozen=True)
class ClassSample:
    ells: tuple[Fraction, ...]
    q: KernelSelection
    member: KernelSelection

    def to_dict(self) -> dict:
        return {
            "ells": [format_rational(ell) for ell in self.ells],
            "q": kernels_to_dict(self.q),
            "member": kernels_to_dict(self.member),
        }


def sample_class_member(tree: ScenarioTree, pstar: KernelSelection, rng: random.Random) -> ClassSample:
    """Draw (ell, q) deterministically from ``rng`` and build the class member."""
    ells = tuple(rng.choice(CLASS_WEIGHTS) for _ in range(tree.horizon))
    q = random_kernels(tree, rng, vertex=rng.random() < 0.5)
    return ClassSample(ells, q, class_member(tree, pstar, ells, q))
