"""Deviation assessment and budgeted fold selection."""

from logfold.optimizer.assessment import (
    aggregate_deviation,
    assess_candidate,
    assess_candidates,
    fold_split,
)
from logfold.optimizer.knapsack import (
    Budget,
    CandidateAssessment,
    PointDeviation,
    solve_knapsack,
    spent,
)
from logfold.optimizer.optimize import (
    OptimizationReport,
    PointSummary,
    optimize_log,
    percent_change,
    resolve_budget,
)

__all__ = [
    "Budget",
    "CandidateAssessment",
    "PointDeviation",
    "solve_knapsack",
    "spent",
    "assess_candidate",
    "assess_candidates",
    "aggregate_deviation",
    "fold_split",
    "optimize_log",
    "OptimizationReport",
    "PointSummary",
    "resolve_budget",
    "percent_change",
]
