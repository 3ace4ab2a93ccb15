"""Log optimization: assess, select within budget, fold jointly."""

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from pydantic import BaseModel, ConfigDict

from logfold.config.settings import AppConfig, BudgetConfig
from logfold.eventlog.timing import temporal_split
from logfold.models.eventlog import EventLog
from logfold.models.gspn import FoldCandidate, Gspn
from logfold.optimizer.assessment import assess_candidates, fold_split
from logfold.optimizer.knapsack import Budget, CandidateAssessment, solve_knapsack, spent
from logfold.predictor.workflow import evaluate_point
from logfold.predpoints.selection import PredictionPointSet
from logfold.simplify.manifest import FoldManifest
from logfold.simplify.simplifier import build_manifest, fresh_labels, simplify_log
from logfold.utils.exceptions import (
    EmptySampleError,
    InvalidArgumentError,
    PredictorConfigError,
    ProtectionViolationError,
    SelectionError,
)
from logfold.utils.logging import get_logger

logger = get_logger(__name__)


def resolve_budget(budget_config: BudgetConfig, original_maes: dict[str, float]) -> Budget:
    """
    Build the budget from its configuration.

    ``original_mae`` takes Gamma as the mean original-model MAE over the
    assessed points, ``fixed`` takes ``gamma_value`` seconds and
    ``relative`` takes ``gamma_value`` times that mean.

    Raises:
        InvalidArgumentError: If Gamma needs original MAEs and none are given
    """
    if budget_config.gamma_mode == "fixed":
        return Budget(gamma=float(budget_config.gamma_value or 0.0), g=budget_config.g)
    if not original_maes:
        raise InvalidArgumentError(f"gamma_mode '{budget_config.gamma_mode}' needs at least one original MAE")
    mean = sum(original_maes.values()) / len(original_maes)
    if budget_config.gamma_mode == "relative":
        return Budget(gamma=float(budget_config.gamma_value or 0.0) * mean, g=budget_config.g)
    return Budget(gamma=mean, g=budget_config.g)


def percent_change(before: float, after: float) -> float:
    """Relative decrease from ``before`` to ``after`` in percent (0 when ``before`` is 0)."""
    if before == 0:
        return 0.0
    return (before - after) / before * 100.0


class PointSummary(BaseModel):
    """Before/after prediction quality and data volume at one point."""

    model_config = ConfigDict(frozen=True)

    point: str
    original_mae: float
    simplified_mae: float
    improvement_pct: float
    original_events: int
    simplified_events: int
    reduction_pct: float


@dataclass
class OptimizationReport:
    """Everything one optimization produced, in the order it was computed."""

    budget: Budget
    points: list[str]
    assessments: list[CandidateAssessment]
    summaries: list[PointSummary]
    manifest: FoldManifest
    net: Gspn
    dropped_points: list[str] = field(default_factory=list)

    @property
    def accepted(self) -> list[str]:
        return [a.name for a in self.assessments if a.x_i]

    @property
    def spent(self) -> float:
        return spent(self.assessments)

    @property
    def within_budget(self) -> bool:
        return self.spent <= self.budget.limit + 1e-9

    @property
    def reduction_pct(self) -> float:
        return self.manifest.reduction * 100.0

    def assessment_rows(self) -> list[dict[str, Any]]:
        """One row per candidate and point: MAE before and after folding that candidate alone."""
        rows = []
        for a in self.assessments:
            for point, dev in a.per_point.items():
                rows.append(
                    {
                        "candidate": a.name,
                        "kind": a.candidate.kind.value,
                        "k": a.k_i,
                        "point": point,
                        "original_mae": dev.original_mae,
                        "folded_mae": dev.folded_mae,
                        "deviation": dev.deviation,
                        "mu": a.mu_i,
                        "selected": bool(a.x_i),
                    }
                )
        return rows

    def summary_rows(self) -> list[dict[str, Any]]:
        return [s.model_dump() for s in self.summaries]


def _original_maes(
    train: EventLog, test: EventLog, points: Sequence[str], config: AppConfig
) -> tuple[dict[str, float], list[str]]:
    maes: dict[str, float] = {}
    dropped: list[str] = []
    for point in points:
        try:
            maes[point] = evaluate_point(train, test, point, config.predictor).mae
        except (EmptySampleError, PredictorConfigError) as e:
            logger.warning(f"Prediction point '{point}' dropped: {e}")
            dropped.append(point)
    return maes, dropped


def optimize_log(
    elog: EventLog,
    candidates: Sequence[FoldCandidate],
    points: PredictionPointSet,
    budget: Optional[Budget] = None,
    config: Optional[AppConfig] = None,
    *,
    net: Gspn,
) -> tuple[EventLog, OptimizationReport]:
    """
    Fold the candidates whose joint deviation fits the budget.

    The log is split in time; each candidate is assessed alone at every
    prediction point, the knapsack picks the accepted set, and the accepted
    folds are applied together to the whole log and the net. A zero budget
    accepts nothing. When ``budget`` is None it is resolved from
    ``config.budget`` using the original-model MAEs.

    Returns:
        The simplified log and the report (per-candidate assessment rows,
        per-point summaries, accepted set, manifest and new net)

    Raises:
        ProtectionViolationError: If a candidate contains a prediction point
        SelectionError: If no prediction point has enough samples to train on
    """
    config = config or AppConfig()
    candidates = list(candidates)
    for cand in candidates:
        hit = points.labels & set(cand.member_activities)
        if hit:
            raise ProtectionViolationError(f"Candidate {cand.name} contains prediction points {sorted(hit)}")

    train, test = temporal_split(elog, config.split.fraction)
    originals, dropped = _original_maes(train, test, points.points, config)
    usable = [p for p in points.points if p in originals]
    if not usable:
        raise SelectionError(f"No prediction point among {list(points.points)} has enough samples")

    budget = budget or resolve_budget(config.budget, originals)
    logger.info(
        f"Optimizing {len(candidates)} candidates at {len(usable)} points; "
        f"budget {budget.g} x {budget.gamma:.3f} = {budget.limit:.3f}"
    )

    assessments = assess_candidates(train, test, net, candidates, usable, config, originals)
    if budget.limit == 0:
        logger.info("Zero deviation budget: no folds accepted")
        assessments = [a.selected(False) for a in assessments]
    else:
        assessments = solve_knapsack(assessments, budget)

    accepted = [a.candidate for a in assessments if a.x_i]
    labels = fresh_labels(accepted, elog, net)
    overwrite = config.processing.overwrite_or_delay
    simplified, new_net, folded = simplify_log(elog, net, accepted, points.points, overwrite, labels)
    manifest = build_manifest(elog, simplified, folded)

    train_folded, test_folded = fold_split(train, test, net, accepted, points.points, overwrite, labels)
    summaries = []
    for point in usable:
        if accepted:
            after = evaluate_point(train_folded, test_folded, point, config.predictor).mae
        else:
            after = originals[point]
        summaries.append(
            PointSummary(
                point=point,
                original_mae=originals[point],
                simplified_mae=after,
                improvement_pct=percent_change(originals[point], after),
                original_events=elog.event_count,
                simplified_events=simplified.event_count,
                reduction_pct=manifest.reduction * 100.0,
            )
        )

    report = OptimizationReport(
        budget=budget,
        points=usable,
        assessments=assessments,
        summaries=summaries,
        manifest=manifest,
        net=new_net,
        dropped_points=dropped,
    )
    logger.info(
        f"Accepted {len(accepted)}/{len(candidates)} folds: sum mu {report.spent:.3f} "
        f"<= {budget.limit:.3f}, events {elog.event_count} -> {simplified.event_count} "
        f"({report.reduction_pct:.1f}% reduction)"
    )
    return simplified, report
