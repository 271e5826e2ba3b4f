"""Instance generator and the cross-check harness."""

import pytest
from pydantic import ValidationError

from qsna.harness import GeneratorConfig, default_checks, gen_instance, rerun_disagreement, run_all
from qsna.harness import runner
from qsna.market import validate
from qsna.market.codec import dump_tree, dumps


def test_same_seed_same_instance():
    config = GeneratorConfig(seed=42)
    assert dump_tree(gen_instance(config)) == dump_tree(gen_instance(config))


def test_different_seeds_differ():
    trees = {dump_tree(gen_instance(GeneratorConfig(seed=s))) for s in range(5)}
    assert len(trees) > 1


@pytest.mark.parametrize("seed", range(10))
def test_generated_instances_are_valid(seed):
    config = GeneratorConfig(seed=seed, dims=(1, 3), labels=(1, 4), force_arbitrage=seed % 2 == 1)
    tree = gen_instance(config)
    assert validate(tree) == []
    assert 1 <= tree.horizon <= 3


def test_ranges_are_respected():
    tree = gen_instance(GeneratorConfig(seed=3, periods=(2, 2), dims=(3, 3), labels=(4, 4)))
    assert tree.horizon == 2
    assert tree.asset_dim == 3
    assert all(len(labels) == 4 for labels in tree.alphabets)


@pytest.mark.parametrize(
    "field, value",
    [("periods", (3, 1)), ("labels", (0, 2)), ("denominator_bound", 0), ("zero_mass_prob", 1.5)],
)
def test_config_validation(field, value):
    with pytest.raises(ValidationError):
        GeneratorConfig(**{field: value})


def test_empty_run():
    report = run_all(GeneratorConfig(seed=1), 0)
    assert report.ok
    assert all(stats.instances == 0 for stats in report.checks.values())
    assert set(report.checks) == set(default_checks())


def test_small_run_agrees_and_is_deterministic():
    config = GeneratorConfig(seed=5, periods=(1, 2))
    first = run_all(config, 4, class_samples=2)
    second = run_all(config, 4, class_samples=2)
    assert first.ok, first.to_dict()
    assert dumps(first.to_dict()) == dumps(second.to_dict())
    assert "wall_time" not in first.to_dict()
    assert "wall_time" in first.to_dict(include_timing=True)
    assert first.checks["local_global"].instances == 4


def test_forced_arbitrage_run_exercises_witnesses():
    report = run_all(GeneratorConfig(seed=9, periods=(1, 2), force_arbitrage=True), 3, class_samples=1)
    assert report.ok, report.to_dict()
    assert report.checks["witness"].instances == 3
    assert report.checks["prior_class"].skipped == 3


def test_injected_bug_is_reported():
    report = run_all(GeneratorConfig(seed=2), 2, checks={"broken": lambda tree, rng: ["always wrong"]})
    assert not report.ok
    assert report.disagreement_count == 2
    item = report.checks["broken"].disagreements[0]
    assert item["problems"] == ["always wrong"]
    assert set(item) == {"seed", "problems", "instance"}
    assert dump_tree(gen_instance(GeneratorConfig(seed=item["seed"]))) == dumps(item["instance"])


def test_crashing_check_becomes_disagreement():
    def crash(tree, rng):
        raise RuntimeError("boom")

    report = run_all(GeneratorConfig(seed=2), 1, checks={"crash": crash})
    assert report.checks["crash"].disagreements[0]["problems"] == ["RuntimeError: boom"]


def test_rerun_reproduces_result():
    config = GeneratorConfig(seed=11, periods=(1, 2))
    assert rerun_disagreement(config, "section", 12345) == rerun_disagreement(config, "section", 12345)


def test_rerun_replays_recorded_class_samples(monkeypatch):
    seen = []

    def recording_check(samples=runner.CLASS_SAMPLES):
        seen.append(samples)
        return lambda tree, rng: []

    monkeypatch.setattr(runner, "prior_class_check", recording_check)
    config = GeneratorConfig(seed=3, periods=(1, 1))
    report = run_all(config, 1, class_samples=3)
    assert report.to_dict()["class_samples"] == 3
    seed = runner.instance_seeds(config, 1)[0]
    assert rerun_disagreement(config, "prior_class", seed, report.class_samples) == []
    assert seen == [3, 3]
