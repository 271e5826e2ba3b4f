"""Shared builders for the test suite."""

from fractions import Fraction
from typing import Sequence

import pytest

from qsna.market import ProbVector, ScenarioTree


def F(value) -> Fraction:
    return Fraction(value)


def vec(*values) -> tuple:
    return tuple(Fraction(v) for v in values)


def one_period(increments: Sequence, generators: Sequence[Sequence], root=0) -> ScenarioTree:
    """One-period tree with labels a, b, c, ... and scalar or vector increments."""
    rows = [tuple(y) if isinstance(y, (tuple, list)) else (y,) for y in increments]
    base = tuple(root) if isinstance(root, (tuple, list)) else (root,) * len(rows[0])
    labels = tuple("abcdefgh"[: len(rows)])
    prices = {(): vec(*base)}
    for label, y in zip(labels, rows):
        prices[(label,)] = tuple(F(b) + F(v) for b, v in zip(base, y))
    priors = {(): tuple(ProbVector(tuple(F(w) for w in g)) for g in generators)}
    return ScenarioTree(1, len(base), (labels,), prices, priors)


def two_period(steps: dict, priors: dict, root=0) -> ScenarioTree:
    """Scalar two-period tree on labels u/d; ``steps`` maps child keys to increments."""
    prices = {(): vec(root)}
    for depth in (1, 2):
        for key, step in sorted(steps.items()):
            node = tuple(key.split("/"))
            if len(node) == depth:
                prices[node] = (prices[node[:-1]][0] + F(step),)
    return ScenarioTree(
        2, 1, (("u", "d"), ("u", "d")), prices,
        {tuple(k.split("/")) if k else (): tuple(ProbVector(tuple(F(w) for w in g)) for g in gens)
         for k, gens in priors.items()},
    )


@pytest.fixture
def symmetric_tree() -> ScenarioTree:
    """Two periods, +-1 moves, generators (1/2, 1/2) everywhere."""
    half = [["1/2", "1/2"]]
    steps = {"u": 1, "d": -1, "u/u": 1, "u/d": -1, "d/u": 1, "d/d": -1}
    return two_period(steps, {"": half, "u": half, "d": half})


@pytest.fixture
def failing_tree() -> ScenarioTree:
    """Two periods; the node 'u' only moves up (increments 1 and 2)."""
    half = [["1/2", "1/2"]]
    steps = {"u": 1, "d": -1, "u/u": 2, "u/d": 1, "d/u": 1, "d/d": -1}
    return two_period(steps, {"": half, "u": half, "d": half})


@pytest.fixture
def polar_failure_tree() -> ScenarioTree:
    """The node 'd' fails NA but no generator ever reaches it."""
    half = [["1/2", "1/2"]]
    steps = {"u": 0, "d": 5, "u/u": 1, "u/d": -1, "d/u": 2, "d/d": 1}
    return two_period(steps, {"": [["1", "0"]], "u": half, "d": half})


@pytest.fixture
def two_prior_tree() -> ScenarioTree:
    """One period: generators are the Diracs on the up and down moves."""
    return one_period([1, -1], [[1, 0], [0, 1]])
