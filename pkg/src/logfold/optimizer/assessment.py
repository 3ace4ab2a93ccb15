"""Per-candidate prediction deviation."""

from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from logfold.config.settings import AppConfig
from logfold.models.eventlog import EventLog
from logfold.models.gspn import FoldCandidate, Gspn
from logfold.optimizer.knapsack import CandidateAssessment, PointDeviation
from logfold.predictor.workflow import evaluate_point
from logfold.simplify.simplifier import fresh_labels, simplify_log
from logfold.utils.exceptions import InvalidArgumentError, ProtectionViolationError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)

WORST = "worst"


def fold_split(
    train: EventLog,
    test: EventLog,
    net: Gspn,
    candidates: list[FoldCandidate],
    protected: Sequence[str] = (),
    overwrite_or_delay: bool = False,
    labels: Optional[Sequence[str]] = None,
) -> tuple[EventLog, EventLog]:
    """Fold the train and test logs with the same candidates and the same fresh labels."""
    if labels is None:
        labels = fresh_labels(candidates, train, net)
    train_folded, _, _ = simplify_log(train, net, candidates, protected, overwrite_or_delay, labels)
    test_folded, _, _ = simplify_log(test, net, candidates, protected, overwrite_or_delay, labels)
    return train_folded, test_folded


def aggregate_deviation(per_point: dict[str, PointDeviation], aggregation: str = WORST) -> float:
    """
    Largest deviation over the points, or the deviation at one named point.

    Raises:
        InvalidArgumentError: If the named point was not assessed
    """
    if not per_point:
        return 0.0
    if aggregation == WORST:
        return max(d.deviation for d in per_point.values())
    if aggregation not in per_point:
        raise InvalidArgumentError(
            f"Aggregation point '{aggregation}' is not among the assessed points {sorted(per_point)}"
        )
    return per_point[aggregation].deviation


def _measure(
    train: EventLog,
    test: EventLog,
    net: Gspn,
    cand: FoldCandidate,
    points: Sequence[str],
    config: AppConfig,
    original_maes: dict[str, float],
) -> dict[str, PointDeviation]:
    hit = set(points) & set(cand.member_activities)
    if hit:
        raise ProtectionViolationError(f"Candidate {cand.name} contains prediction points {sorted(hit)}")

    train_folded, test_folded = fold_split(
        train, test, net, [cand], points, config.processing.overwrite_or_delay
    )
    per_point: dict[str, PointDeviation] = {}
    for point in points:
        if point not in train_folded.activities:
            raise ProtectionViolationError(f"Prediction point '{point}' disappeared after folding {cand.name}")
        original = original_maes.get(point)
        if original is None:
            original = evaluate_point(train, test, point, config.predictor).mae
        if train_folded is train and test_folded is test:
            folded = original
        else:
            folded = evaluate_point(train_folded, test_folded, point, config.predictor).mae
        per_point[point] = PointDeviation(original_mae=original, folded_mae=folded)
    return per_point


def assess_candidate(
    train: EventLog,
    test: EventLog,
    net: Gspn,
    cand: FoldCandidate,
    point: str,
    config: Optional[AppConfig] = None,
    original_mae: Optional[float] = None,
) -> CandidateAssessment:
    """
    Deviation of one candidate at one prediction point.

    Trains on the unmodified training log and on the training log with only
    ``cand`` folded, scores each on the test log folded the same way, and
    returns ``mu_i = |MAE_folded - MAE_original|`` with ``x_i`` unset. A
    candidate that matches no trace leaves both logs as they were, so its
    deviation is 0.

    Raises:
        ProtectionViolationError: If ``point`` is a member of ``cand`` or is
            gone from the folded log
    """
    config = config or AppConfig()
    originals = {point: original_mae} if original_mae is not None else {}
    per_point = _measure(train, test, net, cand, [point], config, originals)
    return CandidateAssessment.of(cand, per_point[point].deviation, per_point=per_point)


def assess_candidates(
    train: EventLog,
    test: EventLog,
    net: Gspn,
    candidates: Sequence[FoldCandidate],
    points: Sequence[str],
    config: Optional[AppConfig] = None,
    original_maes: Optional[dict[str, float]] = None,
) -> list[CandidateAssessment]:
    """
    Assess every candidate at every point and aggregate per ``config.points.aggregation``.

    Candidates are independent, so they run on ``config.processing.workers``
    threads; the result keeps candidate order.
    """
    config = config or AppConfig()
    originals = dict(original_maes or {})
    for point in points:
        if point not in originals:
            originals[point] = evaluate_point(train, test, point, config.predictor).mae
    aggregation = config.points.aggregation

    def assess(cand: FoldCandidate) -> CandidateAssessment:
        per_point = _measure(train, test, net, cand, points, config, originals)
        mu = aggregate_deviation(per_point, aggregation)
        logger.debug(f"{cand.name}: k={cand.activity_count}, mu={mu:.3f}")
        return CandidateAssessment.of(cand, mu, per_point=per_point)

    workers = min(config.processing.workers, max(1, len(candidates)))
    if workers == 1:
        assessments = [assess(c) for c in candidates]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            assessments = list(pool.map(assess, candidates))

    logger.info(f"Assessed {len(assessments)} candidates at {len(points)} points")
    return assessments
