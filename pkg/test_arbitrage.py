"""Local, global and single-prior NA, witnesses and the LP oracles."""

import random
import time
from fractions import Fraction

import pytest

from conftest import one_period, vec
from qsna.arbitrage import (
    ArbitrageWitness,
    LocalVerdict,
    NotRelevantError,
    arbitrage_search,
    diagnose,
    extract_arbitrage,
    find_arbitrage,
    global_arbitrage_search,
    global_na,
    local_na,
    local_witness_lp,
    null_strategies,
    omega_na,
    section_positive,
    single_node_na,
    single_prior_arbitrage_search,
    single_prior_na,
    verify_witness,
)
from qsna.harness import GeneratorConfig, gen_instance
from qsna.market import (
    KernelSelection,
    ProbVector,
    ScenarioTree,
    Strategy,
    quasi_sure_geq,
    relevant_paths,
    support_D,
    support_E,
    value_process,
)
from qsna.priors import random_kernels


# ───────────────────── Local NA ─────────────────────

def test_local_na_holds_with_certificate(two_prior_tree):
    verdict = local_na(two_prior_tree, ())
    assert verdict.holds
    assert verdict.witness is None
    assert all(w > 0 for w in verdict.certificate)
    assert verdict.problems() == []


def test_local_na_fails_with_witness():
    verdict = local_na(one_period([1, 2], [["1/2", "1/2"]]), ())
    assert not verdict.holds
    assert verdict.witness == vec(1)
    assert verdict.problems() == []


def test_local_na_flat_market():
    tree = one_period([0, 0], [["1/2", "1/2"]])
    verdict = local_na(tree, ())
    assert verdict.holds
    assert support_D(tree, ()) == (vec(0),)


def test_local_verdict_round_trip():
    verdict = local_na(one_period([1, 2], [["1/2", "1/2"]]), ())
    assert LocalVerdict.from_dict(verdict.to_dict()) == verdict


def test_single_node_na(two_prior_tree):
    assert single_node_na(two_prior_tree, (), ProbVector(vec("1/2", "1/2"))).holds
    verdict = single_node_na(two_prior_tree, (), ProbVector(vec(1, 0)))
    assert not verdict.holds
    assert verdict.witness == vec(1)


def test_null_strategies():
    tree = one_period([(1, 0), (-1, 0)], [["1/2", "1/2"]])
    assert null_strategies(tree, ()) == [vec(0, 1)]


@pytest.mark.parametrize("seed", range(40))
def test_local_na_matches_lp_oracle(seed):
    config = GeneratorConfig(seed=seed, periods=(1, 1), dims=(1, 3), labels=(2, 6), generators=(1, 4))
    tree = gen_instance(config)
    verdict = local_na(tree, ())
    value, _ = local_witness_lp(support_D(tree, ()))
    assert verdict.holds == (value == 0)
    assert verdict.problems() == []


# ───────────────────── Levels and global NA ─────────────────────

def test_global_na(symmetric_tree, failing_tree):
    assert global_na(symmetric_tree)
    assert not global_na(failing_tree)


def test_polar_failure_is_ignored(polar_failure_tree):
    assert global_na(polar_failure_tree)
    report = diagnose(polar_failure_tree)
    assert report.global_holds
    assert report.failing_polar == [("d",)]
    assert report.failing_relevant == []
    assert report.witness is None


def test_omega_na(polar_failure_tree, failing_tree):
    level = omega_na(polar_failure_tree, 1)
    assert level.nodes == (("u",),)
    assert level.complement_polar
    assert not omega_na(failing_tree, 1).complement_polar
    with pytest.raises(ValueError):
        omega_na(failing_tree, 2)


def test_diagnose_report(failing_tree):
    report = diagnose(failing_tree)
    data = report.to_dict()
    assert data["global_na"] is False
    assert data["failing_relevant"] == ["u"]
    assert [n["node"] for n in data["nodes"]] == ["", "u", "d"]
    assert [level["complement_polar"] for level in data["levels"]] == [True, False]
    assert verify_witness(failing_tree, report.witness) == []


# ───────────────────── Witnesses ─────────────────────

def test_extract_arbitrage_two_periods(failing_tree):
    witness = extract_arbitrage(failing_tree, ("u",), vec(1))
    assert witness.strategy.positions == {("u",): vec(1)}
    assert witness.profit_path == ("u", "u")
    assert verify_witness(failing_tree, witness) == []
    for path in failing_tree.paths():
        terminal = value_process(failing_tree, witness.strategy, path)[-1]
        assert terminal == (0 if path[0] == "d" else failing_tree.price(path)[0] - failing_tree.price(("u",))[0])


def test_extract_arbitrage_rejects_polar_node(polar_failure_tree):
    with pytest.raises(NotRelevantError):
        extract_arbitrage(polar_failure_tree, ("d",), vec(1))


def test_extract_arbitrage_rejects_non_witness(symmetric_tree):
    with pytest.raises(ValueError):
        extract_arbitrage(symmetric_tree, (), vec(1))


def test_find_arbitrage(symmetric_tree, failing_tree):
    assert find_arbitrage(symmetric_tree) is None
    witness = find_arbitrage(failing_tree)
    assert witness is not None
    assert ArbitrageWitness.from_dict(witness.to_dict()) == witness


def test_flipped_witness_fails_verification(failing_tree):
    witness = find_arbitrage(failing_tree)
    flipped = ArbitrageWitness(
        Strategy({node: tuple(-v for v in h) for node, h in witness.strategy.positions.items()}),
        witness.kernels,
        witness.profit_path,
    )
    assert verify_witness(failing_tree, flipped) != []


def test_witness_against_other_instance(failing_tree):
    witness = find_arbitrage(failing_tree)
    other = one_period([1, -1], [["1/2", "1/2"]])
    assert verify_witness(other, witness) != []


def test_increasing_single_path():
    tree = one_period([1], [[1]])
    assert not global_na(tree)
    witness = find_arbitrage(tree)
    assert witness.strategy.positions == {(): vec(1)}
    assert witness.profit_path == ("a",)


# ───────────────────── LP oracles ─────────────────────

def test_arbitrage_search_one_period():
    tree = one_period([1, 2], [["1/2", "1/2"]])
    strategy, path = global_arbitrage_search(tree)
    assert path == ("a",)
    assert value_process(tree, strategy, ("a",))[-1] >= 1
    assert value_process(tree, strategy, ("b",))[-1] >= 0


def test_arbitrage_search_none_when_na_holds(symmetric_tree):
    assert global_arbitrage_search(symmetric_tree) is None
    assert arbitrage_search(symmetric_tree, []) is None


def test_lifted_witness_is_feasible_for_path_oracle(failing_tree):
    witness = find_arbitrage(failing_tree)
    values = [value_process(failing_tree, witness.strategy, p)[-1] for p in relevant_paths(failing_tree)]
    assert min(values) >= 0
    assert max(values) > 0


@pytest.mark.parametrize("seed", range(12))
def test_global_na_matches_path_oracle(seed):
    tree = gen_instance(GeneratorConfig(seed=seed, periods=(1, 2)))
    assert global_na(tree) == (global_arbitrage_search(tree) is None)


def test_profit_path_skips_paths_no_arbitrage_can_profit_on():
    tree = one_period([0, 1], [["1/2", "1/2"]])
    strategy, path = global_arbitrage_search(tree)
    assert path == ("b",)
    assert value_process(tree, strategy, ("a",))[-1] >= 0
    assert value_process(tree, strategy, ("b",))[-1] >= 1


@pytest.mark.parametrize("seed", range(3))
def test_path_oracle_at_harness_scale(seed):
    config = GeneratorConfig(
        seed=seed, periods=(3, 3), dims=(2, 2), labels=(5, 5), generators=(1, 5),
        denominator_bound=20, force_arbitrage=seed == 0,
    )
    tree = gen_instance(config)
    started = time.perf_counter()
    found = global_arbitrage_search(tree)
    elapsed = time.perf_counter() - started
    assert global_na(tree) == (found is None)
    if found is not None:
        strategy, profit_path = found
        assert all(value_process(tree, strategy, p)[-1] >= 0 for p in relevant_paths(tree))
        assert value_process(tree, strategy, profit_path)[-1] >= 1
    assert elapsed < 30


@pytest.mark.parametrize("seed", range(8))
def test_forced_arbitrage_is_found_and_verified(seed):
    tree = gen_instance(GeneratorConfig(seed=seed, force_arbitrage=True))
    assert not global_na(tree)
    assert verify_witness(tree, find_arbitrage(tree)) == []


@pytest.mark.parametrize("seed", range(6))
def test_verdicts_invariant_under_price_scaling(seed):
    tree = gen_instance(GeneratorConfig(seed=seed))
    scaled = ScenarioTree(
        tree.horizon, tree.asset_dim, tree.alphabets,
        {node: tuple(3 * v for v in price) for node, price in tree.prices.items()},
        tree.priors,
    )
    assert [local_na(scaled, n).holds for n in scaled.non_terminal_nodes()] == \
        [local_na(tree, n).holds for n in tree.non_terminal_nodes()]


@pytest.mark.parametrize("seed", range(6))
def test_verdicts_invariant_under_additive_price_shift(seed):
    tree = gen_instance(GeneratorConfig(seed=seed, periods=(1, 2), force_arbitrage=seed % 2 == 0))
    shift = tuple(Fraction(seed + 1, 2 + k) for k in range(tree.asset_dim))
    shifted = ScenarioTree(
        tree.horizon, tree.asset_dim, tree.alphabets,
        {node: tuple(v + c for v, c in zip(price, shift)) for node, price in tree.prices.items()},
        tree.priors,
    )
    assert [local_na(shifted, n).holds for n in shifted.non_terminal_nodes()] == \
        [local_na(tree, n).holds for n in tree.non_terminal_nodes()]
    assert global_na(shifted) == global_na(tree)
    found, shifted_found = global_arbitrage_search(tree), global_arbitrage_search(shifted)
    assert (found is None) == (shifted_found is None)
    if found is not None:
        assert found[1] == shifted_found[1]


def _covering_generators(tree, node, points):
    """Indices of generators, one per point, that charge a label moving to that point."""
    keep = set()
    for y in points:
        keep.add(next(i for i, g in enumerate(tree.generators(node)) if y in support_E(tree, node, g)))
    return sorted(keep)


@pytest.mark.parametrize("seed", range(10))
def test_dropping_generators_outside_certificate_support_keeps_na(seed):
    config = GeneratorConfig(seed=seed, periods=(1, 2), dims=(1, 2), labels=(2, 4), generators=(2, 4))
    tree = gen_instance(config)
    for node in tree.non_terminal_nodes():
        verdict = local_na(tree, node)
        if not verdict.holds:
            continue
        support = [y for y, w in zip(verdict.points, verdict.certificate) if w > 0]
        keep = _covering_generators(tree, node, support)
        generators = tree.generators(node)
        priors = dict(tree.priors)
        priors[node] = tuple(generators[i] for i in keep)
        reduced = ScenarioTree(tree.horizon, tree.asset_dim, tree.alphabets, tree.prices, priors)
        assert local_na(reduced, node).holds


# ───────────────────── Single prior ─────────────────────

def test_single_prior_na(two_prior_tree):
    symmetric = one_period([1, -1], [["1/2", "1/2"]])
    assert single_prior_na(symmetric, KernelSelection.vertex(symmetric))
    assert not single_prior_na(two_prior_tree, KernelSelection({(): vec(1, 0)}))


@pytest.mark.parametrize("seed", range(12))
def test_single_prior_matches_oracle(seed):
    tree = gen_instance(GeneratorConfig(seed=seed, periods=(1, 2)))
    rng = random.Random(seed)
    kernels = random_kernels(tree, rng, vertex=seed % 2 == 0)
    assert single_prior_na(tree, kernels) == (single_prior_arbitrage_search(tree, kernels) is None)


# ───────────────────── Sections ─────────────────────

def test_section_all_positive(symmetric_tree):
    f = {p: Fraction(1) for p in symmetric_tree.paths()}
    section = section_positive(symmetric_tree, f, 1)
    assert section.nodes == (("u",), ("d",))
    assert section.complement_polar


def test_section_excludes_negative_node(symmetric_tree):
    f = {p: Fraction(-1) if p[0] == "u" else Fraction(1) for p in symmetric_tree.paths()}
    section = section_positive(symmetric_tree, f, 1)
    assert section.nodes == (("d",),)
    assert not section.complement_polar
    assert not quasi_sure_geq(symmetric_tree, f, Fraction(0))


def test_section_accepts_callables(polar_failure_tree):
    section = section_positive(polar_failure_tree, lambda p: Fraction(-1) if p[0] == "d" else Fraction(0), 1)
    assert section.nodes == (("u",),)
    assert section.complement_polar


@pytest.mark.parametrize("seed", range(10))
def test_section_matches_quasi_sure(seed):
    tree = gen_instance(GeneratorConfig(seed=seed))
    rng = random.Random(seed)
    relevant = set(relevant_paths(tree))
    f = {p: Fraction(rng.randint(0 if p in relevant and seed % 2 else -1, 2)) for p in tree.paths()}
    for level in range(tree.horizon):
        assert section_positive(tree, f, level).complement_polar == quasi_sure_geq(tree, f, Fraction(0))
