"""Randomized verification harness - instance corpora and cross-checks."""

from .generator import GeneratorConfig, gen_instance
from .runner import (
    CLASS_SAMPLES,
    Check,
    CheckStats,
    HarnessReport,
    default_checks,
    instance_seeds,
    rerun_disagreement,
    run_all,
    run_check,
)

__all__ = [
    "GeneratorConfig",
    "gen_instance",
    "CLASS_SAMPLES",
    "Check",
    "CheckStats",
    "HarnessReport",
    "default_checks",
    "instance_seeds",
    "rerun_disagreement",
    "run_all",
    "run_check",
]
