"""End-to-end experiment pipeline."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, TypeVar

import click

from logfold.community.louvain import louvain
from logfold.community.network_io import save_community_network
from logfold.config.settings import AppConfig
from logfold.discovery.alpha import alpha_discover
from logfold.discovery.net_io import load_gspn, save_gspn
from logfold.discovery.substructures import detect_substructures
from logfold.eventlog.preprocessing import group_infrequent_activities
from logfold.eventlog.reader import parse_csv
from logfold.eventlog.timing import temporal_split
from logfold.eventlog.writer import write_csv
from logfold.harness.baselines import (
    DEFAULT_ATTRIBUTE_ACTIVITY,
    SEPSIS_ENDS,
    SEPSIS_STARTS,
    baseline_attribute_filter,
    baseline_endpoints_filter,
    baseline_value_filter,
    carries_values,
)
from logfold.harness.synthetic import SyntheticSpec, generate_synthetic
from logfold.models.eventlog import EventLog
from logfold.models.gspn import FoldCandidate, Gspn
from logfold.models.network import ResourceCommunityNetwork, SocialNetwork
from logfold.models.report import ATTRIBUTE_FILTER, ENDPOINT_FILTER, ORIGINAL, PROPOSED, MethodScore
from logfold.optimizer.optimize import OptimizationReport, optimize_log
from logfold.predictor.workflow import evaluate_point
from logfold.predpoints.selection import (
    PredictionPointSet,
    community_activity_sets,
    select_prediction_points,
)
from logfold.reporting.experiment_report import (
    ExperimentReportGenerator,
    export_assessments,
    export_points_mae,
    export_summary,
)
from logfold.socialnet.builder import build_social_network
from logfold.socialnet.edgelist import load_social_network
from logfold.utils.exceptions import (
    EmptyLogError,
    EmptySampleError,
    LogFoldError,
    PredictorConfigError,
    StageError,
)
from logfold.utils.logging import get_logger

logger = get_logger(__name__)

T = TypeVar("T")


@dataclass
class ExperimentResult:
    """Every intermediate artifact of one run, plus the files written."""

    log: EventLog
    net: Gspn
    social_network: SocialNetwork
    communities: ResourceCommunityNetwork
    points: PredictionPointSet
    candidates: list[FoldCandidate]
    simplified: EventLog
    report: OptimizationReport
    scores: list[MethodScore]
    output_files: list[str] = field(default_factory=list)


def load_log(config: AppConfig) -> EventLog:
    """The configured CSV log, or a synthetic one when no path is set."""
    if config.input.path:
        log = parse_csv(config.input.path, config.input.column_map, config.input.timestamp_format)
    else:
        spec = SyntheticSpec(cases=config.input.synthetic_cases, noise_activity=config.input.noise_activity)
        log = generate_synthetic(spec, config.seed)
    if config.input.infrequent_threshold:
        log = group_infrequent_activities(log, config.input.infrequent_threshold)
    return log


def score_log(
    method: str,
    log: EventLog,
    points: list[str],
    original_maes: dict[str, float],
    original_events: int,
    config: AppConfig,
) -> list[MethodScore]:
    """MAE of a model trained and tested on ``log`` at every point, against the original MAE."""
    reduction = (1.0 - log.event_count / original_events) * 100.0 if original_events else 0.0
    train = test = None
    try:
        train, test = temporal_split(log, config.split.fraction)
    except EmptyLogError as e:
        logger.warning(f"{method}: {e}")

    scores = []
    for point in points:
        mae: Optional[float] = None
        if train is not None and test is not None:
            try:
                mae = evaluate_point(train, test, point, config.predictor).mae
            except (EmptySampleError, PredictorConfigError) as e:
                logger.warning(f"{method}: no MAE at '{point}': {e}")
        deviation = abs(mae - original_maes[point]) if mae is not None else None
        scores.append(
            MethodScore(
                method=method,
                point=point,
                mae=mae,
                deviation=deviation,
                events=log.event_count,
                reduction_pct=reduction,
            )
        )
    return scores


class ExperimentRunner:
    """
    Complete simplification experiment.

    Orchestrates the full workflow: log -> discovery -> social network ->
    communities -> prediction points -> substructures -> assessment and
    knapsack -> simplification -> comparison -> artifacts. A failing stage
    raises ``StageError`` carrying the stage name.
    """

    def __init__(self, config: AppConfig, progress: bool = False) -> None:
        self.config = config
        self.progress = progress

    def _say(self, message: str) -> None:
        if self.progress:
            click.echo(message)

    def _stage(self, name: str, action: Callable[[], T]) -> T:
        logger.debug(f"Stage {name} started")
        try:
            return action()
        except StageError:
            raise
        except (LogFoldError, ValueError, FileNotFoundError, OSError) as e:
            logger.error(f"Stage {name} failed: {e}")
            raise StageError(name, e) from e

    def _load_net(self, log: EventLog) -> Gspn:
        if self.config.input.net_path:
            return load_gspn(self.config.input.net_path)
        return alpha_discover(log)

    def _load_social_network(self, log: EventLog) -> SocialNetwork:
        if self.config.input.social_network_path:
            return load_social_network(self.config.input.social_network_path)
        return build_social_network(log)

    def _select_points(self, log: EventLog, rcn: ResourceCommunityNetwork) -> PredictionPointSet:
        if self.config.points.override:
            return PredictionPointSet.from_override(self.config.points.override)
        activity_sets = community_activity_sets(log, rcn)
        return select_prediction_points(
            activity_sets,
            multiplicity=self.config.points.multiplicity,
            community_ids=[c.id for c in rcn.communities],
        )

    def _compare(self, log: EventLog, report: OptimizationReport) -> list[MethodScore]:
        originals = {s.point: s.original_mae for s in report.summaries}
        scores = [
            MethodScore(
                method=ORIGINAL,
                point=s.point,
                mae=s.original_mae,
                deviation=0.0,
                events=s.original_events,
                reduction_pct=0.0,
            )
            for s in report.summaries
        ]
        scores += [
            MethodScore(
                method=PROPOSED,
                point=s.point,
                mae=s.simplified_mae,
                deviation=abs(s.simplified_mae - s.original_mae),
                events=s.simplified_events,
                reduction_pct=s.reduction_pct,
            )
            for s in report.summaries
        ]
        baselines = self.config.baselines
        if not baselines.enabled:
            return scores

        activity = baselines.attribute_activity or DEFAULT_ATTRIBUTE_ACTIVITY
        if carries_values(log, activity, baselines.attribute_name):
            filtered = baseline_value_filter(log, activity, baselines.attribute_name, baselines.normal_upper)
        else:
            filtered = baseline_attribute_filter(
                log, activity, baselines.attribute_fraction, self.config.seed, protected=report.points
            )
        scores += score_log(ATTRIBUTE_FILTER, filtered, report.points, originals, log.event_count, self.config)

        starts = baselines.starts or list(SEPSIS_STARTS)
        ends = baselines.ends or list(SEPSIS_ENDS)
        filtered = baseline_endpoints_filter(log, starts, ends)
        scores += score_log(ENDPOINT_FILTER, filtered, report.points, originals, log.event_count, self.config)
        return scores

    def _write(self, result: ExperimentResult) -> list[str]:
        out = self.config.output
        directory = Path(out.directory)
        directory.mkdir(parents=True, exist_ok=True)
        report = result.report
        overview = {
            "Source": self.config.input.path or f"synthetic ({self.config.input.synthetic_cases} cases)",
            "Seed": self.config.seed,
            "Cases": len(result.log),
            "Events": result.log.event_count,
            "Activities": len(result.log.activities),
            "Performers": len(result.social_network),
            "Split fraction": self.config.split.fraction,
            "Predictor": (
                f"{self.config.predictor.regressor}, k={self.config.predictor.k}, "
                f"prefix_len={self.config.predictor.prefix_len}"
            ),
            "Candidates": len(result.candidates),
        }
        written = [
            ExperimentReportGenerator().generate_report(
                directory / out.report_file,
                report,
                result.points,
                result.communities,
                result.scores,
                overview,
            ),
            export_assessments(report, directory / out.assessments_file),
            export_summary(report, directory / out.summary_file),
            export_points_mae(result.scores, directory / out.points_mae_file),
            report.manifest.save(directory / out.manifest_file),
            write_csv(result.simplified, directory / out.simplified_log_file),
            save_gspn(result.net, directory / out.gspn_file),
            save_gspn(report.net, directory / out.simplified_gspn_file),
            save_community_network(result.communities, directory / out.communities_file),
        ]
        return [str(p) for p in written]

    def run(self) -> ExperimentResult:
        """
        Raises:
            StageError: If any stage fails
        """
        self._say("📖 Loading event log...")
        log = self._stage("load", lambda: load_log(self.config))
        self._say(f"   ✓ {len(log)} cases, {log.event_count} events")

        self._say("🔍 Discovering process model...")
        net = self._stage("discover", lambda: self._load_net(log))
        self._say(f"   ✓ {len(net.transitions)} transitions, {len(net.places)} places")

        self._say("👥 Building social network and communities...")
        social = self._stage("socialnet", lambda: self._load_social_network(log))
        rcn = self._stage("communities", lambda: louvain(social))
        self._say(f"   ✓ {len(rcn.communities)} communities (Q = {rcn.modularity:.4f})")

        points = self._stage("points", lambda: self._select_points(log, rcn))
        self._say(f"   ✓ Prediction points: {', '.join(points.points)}")

        candidates = self._stage("substructures", lambda: detect_substructures(net, points.points))
        self._say(f"🧩 {len(candidates)} fold candidates")

        self._say("⚖️  Assessing candidates and solving the knapsack...")
        simplified, report = self._stage(
            "optimize", lambda: optimize_log(log, candidates, points, None, self.config, net=net)
        )
        self._say(
            f"   ✓ Accepted {len(report.accepted)} folds, {report.reduction_pct:.1f}% fewer events"
        )

        scores = self._stage("compare", lambda: self._compare(log, report))
        result = ExperimentResult(
            log=log,
            net=net,
            social_network=social,
            communities=rcn,
            points=points,
            candidates=candidates,
            simplified=simplified,
            report=report,
            scores=scores,
        )

        self._say("📊 Writing report...")
        result.output_files = self._stage("write", lambda: self._write(result))
        for path in result.output_files:
            self._say(f"   ✓ {path}")
        logger.info(f"Experiment finished: {len(result.output_files)} artifacts in {self.config.output.directory}")
        return result


def run_experiment(config: AppConfig, progress: bool = False) -> ExperimentResult:
    """Run the full pipeline (see :class:`ExperimentRunner`)."""
    return ExperimentRunner(config, progress=progress).run()
