"""Seeded random instance generator on a bounded-denominator rational grid."""

from __future__ import annotations

import random
import string
from fractions import Fraction
from typing import Tuple

from pydantic import BaseModel, Field, validator

from ..logging_config import get_logger
from ..market import Node, ProbVector, ScenarioTree, Vector, node_key, relevant_nodes

logger = get_logger(__name__)

IntRange = Tuple[int, int]

# Price increments are drawn from [-STEP_SPAN, STEP_SPAN].
STEP_SPAN = 2


class GeneratorConfig(BaseModel):
    """Corpus parameters; every range is inclusive."""

    seed: int = Field(default=0, ge=0, lt=2**64, description="64-bit corpus seed")
    periods: IntRange = Field(default=(1, 3), description="Horizon T range")
    dims: IntRange = Field(default=(1, 2), description="Asset dimension range")
    labels: IntRange = Field(default=(2, 3), description="Alphabet size range per level")
    generators: IntRange = Field(default=(1, 3), description="Generator priors per node")
    denominator_bound: int = Field(default=4, ge=1, description="Largest denominator on the grid")
    zero_mass_prob: float = Field(default=0.3, ge=0.0, le=1.0, description="Chance a generator skips a label")
    force_arbitrage: bool = Field(default=False, description="Plant a local arbitrage at a relevant node")

    @validator("periods", "dims", "labels", "generators")
    def _check_range(cls, value: IntRange) -> IntRange:
        low, high = value
        if low < 1 or low > high:
            raise ValueError(f"range must satisfy 1 <= low <= high, got {low}-{high}")
        return value

    def with_seed(self, seed: int) -> "GeneratorConfig":
        return self.copy(update={"seed": seed})


def _labels(size: int) -> tuple[str, ...]:
    if size <= len(string.ascii_lowercase):
        return tuple(string.ascii_lowercase[:size])
    return tuple(f"l{i}" for i in range(size))


def _grid_value(rng: random.Random, bound: int, span: int) -> Fraction:
    den = rng.randint(1, bound)
    return Fraction(rng.randint(-span * den, span * den), den)


def _generator(rng: random.Random, size: int, config: GeneratorConfig) -> ProbVector:
    raw = [0 if rng.random() < config.zero_mass_prob else rng.randint(1, config.denominator_bound) for _ in range(size)]
    if not any(raw):
        raw[rng.randrange(size)] = 1
    total = sum(raw)
    return ProbVector(tuple(Fraction(r, total) for r in raw))


def _increments(rng: random.Random, config: GeneratorConfig, alphabets, dim: int) -> dict[Node, Vector]:
    steps: dict[Node, Vector] = {}
    for depth in range(len(alphabets)):
        for node in _nodes(alphabets, depth):
            children = [node + (label,) for label in alphabets[depth]]
            for child in children:
                steps[child] = tuple(_grid_value(rng, config.denominator_bound, STEP_SPAN) for _ in range(dim))
            # Half the nodes are balanced: the increments sum to zero.
            if len(children) > 1 and rng.random() < 0.5:
                rest = children[:-1]
                steps[children[-1]] = tuple(-sum((steps[c][k] for c in rest), Fraction(0)) for k in range(dim))
    return steps


def _nodes(alphabets, depth: int):
    level: list[Node] = [()]
    for t in range(depth):
        level = [node + (label,) for node in level for label in alphabets[t]]
    return level


def _plant_arbitrage(rng: random.Random, tree: ScenarioTree, steps: dict[Node, Vector]) -> Node:
    level = rng.randrange(tree.horizon)
    node = rng.choice(relevant_nodes(tree, level))
    for label in tree.alphabet(node):
        step = steps[node + (label,)]
        steps[node + (label,)] = (abs(step[0]) + 1,) + step[1:]
    return node


def _prices(tree_shape: ScenarioTree, root: Vector, steps: dict[Node, Vector]) -> dict[Node, Vector]:
    prices = {(): root}
    for depth in range(1, tree_shape.horizon + 1):
        for node in tree_shape.nodes(depth):
            parent = prices[node[:-1]]
            prices[node] = tuple(p + s for p, s in zip(parent, steps[node]))
    return prices


def gen_instance(config: GeneratorConfig) -> ScenarioTree:
    """Deterministic in ``config.seed``; valid by construction.

    With ``force_arbitrage`` every increment at one relevant node gets a
    strictly positive first coordinate (the shift carries over to the whole
    subtree), so NA fails there.
    """
    rng = random.Random(config.seed)
    horizon = rng.randint(*config.periods)
    dim = rng.randint(*config.dims)
    alphabets = tuple(_labels(rng.randint(*config.labels)) for _ in range(horizon))

    priors = {}
    for depth in range(horizon):
        for node in _nodes(alphabets, depth):
            count = rng.randint(*config.generators)
            priors[node] = tuple(_generator(rng, len(alphabets[depth]), config) for _ in range(count))
    steps = _increments(rng, config, alphabets, dim)
    root = tuple(Fraction(rng.randint(0, 10)) for _ in range(dim))

    shape = ScenarioTree(horizon, dim, alphabets, {}, priors)
    if config.force_arbitrage:
        planted = _plant_arbitrage(rng, shape, steps)
        logger.debug(f"seed {config.seed}: arbitrage planted at node {node_key(planted)!r}")
    return ScenarioTree(horizon, dim, alphabets, _prices(shape, root, steps), priors)
