"""Whole-tree NA diagnosis and its JSON report."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..logging_config import get_logger
from ..market import Node, ScenarioTree, node_key, relevant_nodes
from .local import LocalVerdict, OmegaNA, local_na
from .quasi_sure import ArbitrageWitness, extract_arbitrage

logger = get_logger(__name__)


@dataclass
class NAReport:
    """Per-node verdicts, Omega_NA per level and the global verdict."""

    verdicts: list[LocalVerdict] = field(default_factory=list)
    levels: list[OmegaNA] = field(default_factory=list)
    global_holds: bool = True
    witness: Optional[ArbitrageWitness] = None

    @property
    def failing_relevant(self) -> list[Node]:
        return [v.node for v in self.verdicts if not v.holds and v.relevant]

    @property
    def failing_polar(self) -> list[Node]:
        return [v.node for v in self.verdicts if not v.holds and not v.relevant]

    def to_dict(self) -> dict:
        data = {
            "global_na": self.global_holds,
            "nodes": [v.to_dict() for v in self.verdicts],
            "levels": [level.to_dict() for level in self.levels],
            "failing_relevant": [node_key(n) for n in self.failing_relevant],
            "failing_polar": [node_key(n) for n in self.failing_polar],
        }
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        return data


def diagnose(tree: ScenarioTree, with_witness: bool = True) -> NAReport:
    """Local verdicts at every non-terminal node, in level/lexicographic order.

    Failing polar nodes are reported but do not affect the global verdict.
    """
    report = NAReport()
    for node in tree.non_terminal_nodes():
        report.verdicts.append(local_na(tree, node))
    for t in range(tree.horizon):
        holding = tuple(v.node for v in report.verdicts if len(v.node) == t and v.holds)
        members = set(holding)
        polar = all(node in members for node in relevant_nodes(tree, t))
        report.levels.append(OmegaNA(t, holding, polar))
    report.global_holds = all(level.complement_polar for level in report.levels)
    if not report.global_holds and with_witness:
        first = report.failing_relevant[0]
        verdict = next(v for v in report.verdicts if v.node == first)
        report.witness = extract_arbitrage(tree, first, verdict.witness)
    logger.debug(
        f"diagnosis: global NA {report.global_holds}, "
        f"{len(report.failing_relevant)} relevant and {len(report.failing_polar)} polar failures"
    )
    return report
