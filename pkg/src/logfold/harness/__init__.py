"""Synthetic logs, filter baselines and the end-to-end experiment."""

from logfold.harness.baselines import (
    DEFAULT_ATTRIBUTE_ACTIVITY,
    SEPSIS_ENDS,
    SEPSIS_STARTS,
    baseline_attribute_filter,
    baseline_endpoints_filter,
    baseline_value_filter,
    carries_values,
)
from logfold.harness.experiment import (
    ExperimentResult,
    ExperimentRunner,
    load_log,
    run_experiment,
    score_log,
)
from logfold.harness.synthetic import DelaySpec, SyntheticSpec, generate_synthetic

__all__ = [
    "SyntheticSpec",
    "DelaySpec",
    "generate_synthetic",
    "baseline_attribute_filter",
    "baseline_endpoints_filter",
    "baseline_value_filter",
    "carries_values",
    "DEFAULT_ATTRIBUTE_ACTIVITY",
    "SEPSIS_STARTS",
    "SEPSIS_ENDS",
    "ExperimentRunner",
    "ExperimentResult",
    "run_experiment",
    "load_log",
    "score_log",
]
