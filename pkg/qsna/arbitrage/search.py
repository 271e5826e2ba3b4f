"""LP arbitrage oracles, independent of the geometric criterion.

These are exponential in the number of paths and serve to cross-check the
local criterion; production verdicts never depend on them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from ..geometry import LinearProgram, Relation, lp_solve
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
    node_key,
    relevant_paths,
)

logger = get_logger(__name__)


def local_witness_lp(points: Sequence[Vector]) -> tuple[Fraction, Vector]:
    """max sum_y h.y s.t. h.y >= 0 for y in points, |h_j| <= 1.

    The optimum is positive exactly when a local arbitrage exists.
    """
    dim = len(points[0])
    objective = tuple(sum((y[k] for y in points), Fraction(0)) for k in range(dim))
    lp = LinearProgram(objective, bounds=[(Fraction(-1), Fraction(1))] * dim)
    for y in points:
        lp.add(y, Relation.GE, Fraction(0))
    result = lp_solve(lp)
    return result.value, result.solution


class _PathSystem:
    """Terminal value V_T(path) as a linear form in the positions of the path prefixes."""

    def __init__(self, tree: ScenarioTree, paths: Sequence[Path]) -> None:
        self.tree = tree
        self.paths = list(paths)
        self.index: dict[Node, int] = {}
        for depth in range(tree.horizon):
            for path in self.paths:
                self.index.setdefault(path[:depth], len(self.index))
        self.num_vars = len(self.index) * tree.asset_dim
        self.rows = [self._row(path) for path in self.paths]

    def _row(self, path: Path) -> list[Fraction]:
        d = self.tree.asset_dim
        row = [Fraction(0)] * self.num_vars
        for t in range(self.tree.horizon):
            node = path[:t]
            step = delta_S(self.tree, node, path[t])
            base = self.index[node] * d
            for k in range(d):
                row[base + k] += step[k]
        return row

    def strategy(self, solution: Sequence[Fraction]) -> Strategy:
        d = self.tree.asset_dim
        positions = {}
        for node, i in self.index.items():
            position = tuple(solution[i * d + k] for k in range(d))
            if any(v != 0 for v in position):
                positions[node] = position
        return Strategy(positions)

    def profit_program(self) -> LinearProgram:
        """max sum_w t_w s.t. t_w <= V_T(w), 0 <= t_w <= 1, positions free.

        Arbitrage strategies form a cone, so at the optimum t_w = 1 exactly on
        the paths that some arbitrage makes strictly profitable, and
        V_T >= t >= 0 everywhere.
        """
        count = len(self.paths)
        lp = LinearProgram(
            tuple([Fraction(0)] * self.num_vars + [Fraction(1)] * count),
            bounds=[(None, None)] * self.num_vars + [(Fraction(0), Fraction(1))] * count,
        )
        for i, row in enumerate(self.rows):
            slot = [Fraction(0)] * count
            slot[i] = Fraction(1)
            lp.add([-v for v in row] + slot, Relation.LE, Fraction(0))
        return lp


def _first_profitable_path(system: _PathSystem) -> Optional[tuple[Strategy, Path]]:
    result = lp_solve(system.profit_program())
    if not result.is_optimal or result.value <= 0:
        return None
    flags = result.solution[system.num_vars:]
    first = next(i for i, t in enumerate(flags) if t == 1)
    return system.strategy(result.solution[: system.num_vars]), system.paths[first]


def arbitrage_search(tree: ScenarioTree, paths: Sequence[Path]) -> Optional[tuple[Strategy, Path]]:
    """First path w* (in the given order) admitting phi with V_T >= 0 on ``paths`` and V_T(w*) >= 1."""
    if not paths:
        return None
    system = _PathSystem(tree, paths)
    found = _first_profitable_path(system)
    if found is not None:
        logger.debug(f"LP oracle found arbitrage with profit path {node_key(found[1])!r}")
    return found


def global_arbitrage_search(tree: ScenarioTree) -> Optional[tuple[Strategy, Path]]:
    """Quasi-sure arbitrage search over the relevant paths."""
    return arbitrage_search(tree, relevant_paths(tree))


def single_prior_arbitrage_search(tree: ScenarioTree, kernels: KernelSelection) -> Optional[tuple[Strategy, Path]]:
    """Arbitrage search for the single prior induced by ``kernels`` (paths of positive mass)."""
    return arbitrage_search(tree, charged_nodes(tree, kernels, tree.horizon))
