"""Randomized cross-checks of the geometric criteria against the LP oracles."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from ..arbitrage import (
    find_arbitrage,
    global_arbitrage_search,
    global_na,
    local_na,
    local_witness_lp,
    section_positive,
    single_prior_arbitrage_search,
    single_prior_na,
    verify_witness,
)
from ..logging_config import get_logger
from ..market import ScenarioTree, node_key, path_probability, quasi_sure_geq, relevant_paths, support_D
from ..market.codec import tree_to_dict
from ..priors import construct_pstar, dominating_member, polar_sets_equal, random_kernels, sample_class_member
from .generator import GeneratorConfig, gen_instance

logger = get_logger(__name__)

# A check returns None when it does not apply to the instance, otherwise
# the list of disagreements it found (empty = agreement).
Check = Callable[[ScenarioTree, random.Random], Optional[list[str]]]

CLASS_SAMPLES = 20


def check_local_oracle(tree: ScenarioTree, rng: random.Random) -> Optional[list[str]]:
    problems = []
    for node in tree.non_terminal_nodes():
        verdict = local_na(tree, node)
        value, _ = local_witness_lp(support_D(tree, node))
        if verdict.holds != (value == 0):
            problems.append(f"node {node_key(node)!r}: geometric {verdict.holds}, LP optimum {value}")
        problems.extend(f"node {node_key(node)!r}: {issue}" for issue in verdict.problems())
    return problems


def check_local_global(tree: ScenarioTree, rng: random.Random) -> Optional[list[str]]:
    holds = global_na(tree)
    found = global_arbitrage_search(tree)
    if holds != (found is None):
        return [f"global_na {holds} but path oracle {'found' if found else 'found no'} arbitrage"]
    return []


def check_pstar(tree: ScenarioTree, rng: random.Random) -> Optional[list[str]]:
    holds = global_na(tree)
    problems = []
    for method in ("mixture", "greedy"):
        certificate = construct_pstar(tree, method)
        if certificate.valid != holds:
            problems.append(f"{method} P* certificate valid={certificate.valid}, global_na={holds}")
    return problems


def check_single_prior(tree: ScenarioTree, rng: random.Random) -> Optional[list[str]]:
    kernels = random_kernels(tree, rng, vertex=rng.random() < 0.5)
    holds = single_prior_na(tree, kernels)
    found = single_prior_arbitrage_search(tree, kernels)
    if holds != (found is None):
        return [f"single_prior_na {holds} disagrees with the path oracle"]
    return []


def prior_class_check(samples: int = CLASS_SAMPLES) -> Check:
    """Class members are arbitrage-free, keep the polar sets and dominate Q."""

    def check(tree: ScenarioTree, rng: random.Random) -> Optional[list[str]]:
        if not global_na(tree):
            return None
        pstar = construct_pstar(tree).kernels
        problems = []
        if not polar_sets_equal(tree, pstar):
            problems.append("polar sets differ")
        floor = Fraction(1, 2 ** tree.horizon)
        for i in range(samples):
            sample = sample_class_member(tree, pstar, rng)
            if not single_prior_na(tree, sample.member):
                problems.append(f"class member {i} admits arbitrage")
            q = random_kernels(tree, rng)
            member = dominating_member(tree, pstar, q)
            for path in tree.paths():
                if path_probability(tree, member, path) < floor * path_probability(tree, q, path):
                    problems.append(f"domination fails on path {node_key(path)!r} (sample {i})")
                    break
        return problems

    return check


def check_section(tree: ScenarioTree, rng: random.Random) -> Optional[list[str]]:
    relevant = set(relevant_paths(tree))
    nonnegative = rng.random() < 0.5
    values = {}
    for path in tree.paths():
        low = 0 if nonnegative and path in relevant else -2
        values[path] = Fraction(rng.randint(low, 3), rng.randint(1, 3))
    level = rng.randrange(tree.horizon)
    section = section_positive(tree, values, level)
    qs = quasi_sure_geq(tree, values, Fraction(0))
    if section.complement_polar != qs:
        return [f"level {level}: section complement_polar {section.complement_polar}, quasi-sure {qs}"]
    return []


def check_witness(tree: ScenarioTree, rng: random.Random) -> Optional[list[str]]:
    if global_na(tree):
        return None
    witness = find_arbitrage(tree)
    if witness is None:
        return ["NA fails but no witness was extracted"]
    return verify_witness(tree, witness)


def default_checks(class_samples: int = CLASS_SAMPLES) -> dict[str, Check]:
    return {
        "local_oracle": check_local_oracle,
        "local_global": check_local_global,
        "pstar": check_pstar,
        "single_prior": check_single_prior,
        "prior_class": prior_class_check(class_samples),
        "section": check_section,
        "witness": check_witness,
    }


@dataclass
class CheckStats:
    instances: int = 0
    agreements: int = 0
    skipped: int = 0
    disagreements: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "instances": self.instances,
            "agreements": self.agreements,
            "skipped": self.skipped,
            "disagreements": self.disagreements,
        }


@dataclass
class HarnessReport:
    config: GeneratorConfig
    n_instances: int
    checks: dict[str, CheckStats] = field(default_factory=dict)
    wall_time: float = 0.0
    class_samples: int = CLASS_SAMPLES

    @property
    def ok(self) -> bool:
        return all(not stats.disagreements for stats in self.checks.values())

    @property
    def disagreement_count(self) -> int:
        return sum(len(stats.disagreements) for stats in self.checks.values())

    def to_dict(self, include_timing: bool = False) -> dict:
        config = self.config.dict()
        data = {
            "ok": self.ok,
            "config": {key: list(value) if isinstance(value, tuple) else value for key, value in config.items()},
            "n_instances": self.n_instances,
            "class_samples": self.class_samples,
            "checks": {name: stats.to_dict() for name, stats in self.checks.items()},
        }
        if include_timing:
            data["wall_time"] = round(self.wall_time, 3)
        return data


def instance_seeds(config: GeneratorConfig, n_instances: int) -> list[int]:
    rng = random.Random(config.seed)
    return [rng.getrandbits(64) for _ in range(n_instances)]


def run_check(name: str, check: Check, tree: ScenarioTree, seed: int) -> Optional[list[str]]:
    """Run one check with its own deterministic stream; crashes become disagreements."""
    rng = random.Random(f"{seed}/{name}")
    try:
        return check(tree, rng)
    except Exception as e:
        return [f"{type(e).__name__}: {e}"]


def run_all(
    config: GeneratorConfig,
    n_instances: int,
    checks: Optional[dict[str, Check]] = None,
    class_samples: int = CLASS_SAMPLES,
) -> HarnessReport:
    """Generate ``n_instances`` trees from ``config`` and run every check on each."""
    if checks is None:
        checks = default_checks(class_samples)
    report = HarnessReport(
        config, n_instances, {name: CheckStats() for name in checks}, class_samples=class_samples
    )
    started = time.perf_counter()
    for i, seed in enumerate(instance_seeds(config, n_instances)):
        tree = gen_instance(config.with_seed(seed))
        logger.debug(f"instance {i} (seed {seed}): T={tree.horizon}, d={tree.asset_dim}")
        for name, check in checks.items():
            stats = report.checks[name]
            problems = run_check(name, check, tree, seed)
            if problems is None:
                stats.skipped += 1
                continue
            stats.instances += 1
            if problems:
                logger.warning(f"check {name} disagrees on seed {seed}: {problems[0]}")
                stats.disagreements.append({"seed": seed, "problems": problems, "instance": tree_to_dict(tree)})
            else:
                stats.agreements += 1
    report.wall_time = time.perf_counter() - started
    return report


def rerun_disagreement(
    config: GeneratorConfig, name: str, seed: int, class_samples: int = CLASS_SAMPLES
) -> Optional[list[str]]:
    """Regenerate the instance of ``seed`` and run check ``name`` on it again.

    Pass the ``class_samples`` recorded in the report to replay the same stream.
    """
    tree = gen_instance(config.with_seed(seed))
    return run_check(name, default_checks(class_samples)[name], tree, seed)
