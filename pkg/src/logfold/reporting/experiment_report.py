"""Experiment report generation: markdown report plus CSV tables."""

from pathlib import Path
from typing import Any, Optional, Sequence

from logfold.models.network import ResourceCommunityNetwork
from logfold.models.report import ORIGINAL, MethodScore
from logfold.optimizer.optimize import OptimizationReport
from logfold.predpoints.selection import PredictionPointSet
from logfold.reporting.formatting import MarkdownFormatter, write_rows_csv
from logfold.utils.atomic import atomic_write_text

ASSESSMENT_COLUMNS = (
    "candidate",
    "kind",
    "k",
    "point",
    "original_mae",
    "folded_mae",
    "deviation",
    "mu",
    "selected",
)
SUMMARY_COLUMNS = (
    "point",
    "original_mae",
    "simplified_mae",
    "improvement_pct",
    "original_events",
    "simplified_events",
    "reduction_pct",
)
POINTS_MAE_COLUMNS = ("method", "point", "mae", "deviation", "events", "reduction_pct")


def export_assessments(report: OptimizationReport, path: str | Path) -> Path:
    """Per candidate and point MAE before and after folding that candidate alone."""
    return write_rows_csv(report.assessment_rows(), ASSESSMENT_COLUMNS, path)


def export_summary(report: OptimizationReport, path: str | Path) -> Path:
    """Per point prediction quality and data volume of the simplified log."""
    return write_rows_csv(report.summary_rows(), SUMMARY_COLUMNS, path)


def export_points_mae(scores: Sequence[MethodScore], path: str | Path) -> Path:
    """Plot-ready comparison: one row per method and point."""
    return write_rows_csv([s.model_dump() for s in scores], POINTS_MAE_COLUMNS, path)


class ExperimentReportGenerator:
    """
    Generates the human-readable markdown report of one experiment.

    Sections: run overview, resource communities, prediction points,
    candidate assessment, budget, accepted folds, before/after summary and,
    when baselines ran, the method comparison. Output is deterministic for
    identical inputs.
    """

    def __init__(self, formatter: Optional[MarkdownFormatter] = None) -> None:
        self.fmt = formatter or MarkdownFormatter()

    def generate_report(
        self,
        output_path: Path | str,
        report: OptimizationReport,
        points: PredictionPointSet,
        communities: Optional[ResourceCommunityNetwork] = None,
        comparisons: Sequence[MethodScore] = (),
        overview: Optional[dict[str, Any]] = None,
    ) -> Path:
        return atomic_write_text(
            Path(output_path),
            self.render(report, points, communities, comparisons, overview),
        )

    def render(
        self,
        report: OptimizationReport,
        points: PredictionPointSet,
        communities: Optional[ResourceCommunityNetwork] = None,
        comparisons: Sequence[MethodScore] = (),
        overview: Optional[dict[str, Any]] = None,
    ) -> str:
        sections = ["# Log simplification report"]
        if overview:
            sections.append(self._overview_section(overview))
        if communities is not None:
            sections.append(self._communities_section(communities))
        sections.append(self._points_section(points, report))
        sections.append(self._assessment_section(report))
        sections.append(self._budget_section(report))
        sections.append(self._folds_section(report))
        sections.append(self._summary_section(report))
        methods = {s.method for s in comparisons}
        if len(methods - {ORIGINAL}) > 1:
            sections.append(self._comparison_section(comparisons))
        return "\n\n".join(sections) + "\n"

    def _overview_section(self, overview: dict[str, Any]) -> str:
        rows = [(key, value) for key, value in overview.items()]
        return "\n".join([self.fmt.heading("Run"), "", self.fmt.table(("Setting", "Value"), rows)])

    def _communities_section(self, rcn: ResourceCommunityNetwork) -> str:
        rows = [
            (c.id, ", ".join(c.members), f"{c.loop_weight:.3f}")
            for c in rcn.communities
        ]
        return "\n".join(
            [
                self.fmt.heading("Resource communities"),
                "",
                f"Modularity: {rcn.modularity:.4f}",
                "",
                self.fmt.table(("Community", "Performers", "Internal weight"), rows, numeric=(2,)),
            ]
        )

    def _points_section(self, points: PredictionPointSet, report: OptimizationReport) -> str:
        rows = []
        for point in points.points:
            status = "dropped (no samples)" if point in report.dropped_points else "assessed"
            rows.append((point, points.provenance.get(point, ""), status))
        lines = [
            self.fmt.heading("Prediction points"),
            "",
            self.fmt.table(("Point", "Community", "Status"), rows),
        ]
        if points.uncovered:
            lines += ["", f"Communities without a point: {', '.join(points.uncovered)}"]
        return "\n".join(lines)

    def _assessment_section(self, report: OptimizationReport) -> str:
        """Candidates by point: the MAE with that candidate alone folded."""
        headers = ["Candidate", "Kind", "k"] + [f"MAE {p}" for p in report.points] + ["mu", "Selected"]
        numeric = tuple(range(2, 3 + len(report.points) + 1))
        originals: dict[str, Optional[float]] = {p: None for p in report.points}
        for a in report.assessments:
            for point, dev in a.per_point.items():
                originals[point] = dev.original_mae
        rows: list[list[str]] = [
            ["(original)", "", ""] + [self.fmt.format_seconds(originals[p]) for p in report.points] + ["", ""]
        ]
        for a in report.assessments:
            cells = [a.name, a.candidate.kind.value, str(a.k_i)]
            for point in report.points:
                dev = a.per_point.get(point)
                cells.append(self.fmt.format_seconds(dev.folded_mae if dev else None))
            cells += [self.fmt.format_seconds(a.mu_i), self.fmt.format_flag(a.x_i)]
            rows.append(cells)
        body = self.fmt.table(headers, rows, numeric=numeric) if report.assessments else "No candidates."
        return "\n".join([self.fmt.heading("Candidate assessment"), "", "MAE in seconds.", "", body])

    def _budget_section(self, report: OptimizationReport) -> str:
        b = report.budget
        rows = [
            ("Gamma (s)", self.fmt.format_seconds(b.gamma)),
            ("g", f"{b.g:g}"),
            ("Limit g x Gamma (s)", self.fmt.format_seconds(b.limit)),
            ("Spent sum mu x (s)", self.fmt.format_seconds(report.spent)),
            ("Within budget", self.fmt.format_flag(report.within_budget)),
            ("Accepted", ", ".join(report.accepted) or "none"),
        ]
        return "\n".join([self.fmt.heading("Budget"), "", self.fmt.table(("Quantity", "Value"), rows)])

    def _folds_section(self, report: OptimizationReport) -> str:
        rows = [
            (
                f.label,
                f.kind.value,
                ", ".join(f.replaced),
                f.delay_rule,
                self.fmt.format_seconds(f.pooled_delay),
                f.traces_touched,
                f.events_removed,
            )
            for f in report.manifest.folds
        ]
        body = (
            self.fmt.table(
                ("Label", "Kind", "Replaced", "Delay", "Pooled delay (s)", "Traces", "Events removed"),
                rows,
                numeric=(4, 5, 6),
            )
            if rows
            else "No folds applied."
        )
        return "\n".join([self.fmt.heading("Applied folds"), "", body])

    def _summary_section(self, report: OptimizationReport) -> str:
        rows = [
            (
                s.point,
                self.fmt.format_seconds(s.original_mae),
                self.fmt.format_seconds(s.simplified_mae),
                self.fmt.format_percentage(s.improvement_pct),
                s.original_events,
                s.simplified_events,
                self.fmt.format_percentage(s.reduction_pct),
            )
            for s in report.summaries
        ]
        headers = (
            "Point",
            "Original MAE (s)",
            "Simplified MAE (s)",
            "Prediction improvement",
            "Original events",
            "Simplified events",
            "Data reduction",
        )
        return "\n".join(
            [self.fmt.heading("Deviation and data volume"), "", self.fmt.table(headers, rows, numeric=(1, 2, 3, 4, 5, 6))]
        )

    def _comparison_section(self, scores: Sequence[MethodScore]) -> str:
        rows = [
            (
                s.point,
                s.method,
                self.fmt.format_seconds(s.mae),
                self.fmt.format_seconds(s.deviation),
                s.events,
                self.fmt.format_percentage(s.reduction_pct),
            )
            for s in sorted(scores, key=lambda s: s.point)
        ]
        headers = ("Point", "Method", "MAE (s)", "Deviation (s)", "Events", "Data reduction")
        return "\n".join(
            [self.fmt.heading("Method comparison"), "", self.fmt.table(headers, rows, numeric=(2, 3, 4, 5))]
        )
