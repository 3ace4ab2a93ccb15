"""Unit tests for reporting modules."""

from pathlib import Path

import pandas as pd
import pytest

from logfold.discovery.alpha import alpha_discover
from logfold.models.eventlog import EventLog
from logfold.models.gspn import FoldCandidate, FoldKind
from logfold.models.network import ResourceCommunityNetwork
from logfold.models.report import ATTRIBUTE_FILTER, ORIGINAL, PROPOSED, MethodScore
from logfold.optimizer.knapsack import Budget, CandidateAssessment, PointDeviation
from logfold.optimizer.optimize import OptimizationReport, PointSummary
from logfold.predpoints.selection import PredictionPointSet
from logfold.reporting.experiment_report import (
    ASSESSMENT_COLUMNS,
    ExperimentReportGenerator,
    export_assessments,
    export_points_mae,
    export_summary,
)
from logfold.reporting.formatting import MarkdownFormatter, write_rows_csv
from logfold.simplify.manifest import FoldedActivity, FoldManifest


@pytest.fixture
def sample_report(example_log: EventLog) -> OptimizationReport:
    """A report with one accepted self-loop and one rejected sequence at point IV."""
    loop = FoldCandidate.build(FoldKind.SELF_LOOP, ["CRP"], "p(CRP)", "p(CRP)")
    sequence = FoldCandidate.build(FoldKind.SEQUENCE, ["A", "B"], "start", "p(B|C)")
    assessments = [
        CandidateAssessment.of(loop, 12.5, x_i=True, per_point={"IV": PointDeviation(original_mae=100, folded_mae=112.5)}),
        CandidateAssessment.of(sequence, 40.0, x_i=False, per_point={"IV": PointDeviation(original_mae=100, folded_mae=60)}),
    ]
    manifest = FoldManifest(
        folds=[
            FoldedActivity(
                label="FOLD_SelfLoop_1",
                kind=FoldKind.SELF_LOOP,
                replaced=("CRP",),
                delay_rule="repeat-sum",
                traces_touched=50,
                events_removed=200,
            )
        ],
        events_before=1000,
        events_after=800,
    )
    summaries = [
        PointSummary(
            point="IV",
            original_mae=100.0,
            simplified_mae=110.0,
            improvement_pct=-10.0,
            original_events=1000,
            simplified_events=800,
            reduction_pct=20.0,
        )
    ]
    return OptimizationReport(
        budget=Budget(gamma=100.0, g=0.2),
        points=["IV"],
        assessments=assessments,
        summaries=summaries,
        manifest=manifest,
        net=alpha_discover(example_log),
        dropped_points=["Nowhere"],
    )


@pytest.fixture
def sample_points() -> PredictionPointSet:
    return PredictionPointSet(points=("IV", "Nowhere"), provenance={"IV": "C1", "Nowhere": "C2"}, uncovered=("C3",))


@pytest.fixture
def sample_scores() -> list[MethodScore]:
    return [
        MethodScore(method=ORIGINAL, point="IV", mae=100.0, deviation=0.0, events=1000, reduction_pct=0.0),
        MethodScore(method=PROPOSED, point="IV", mae=110.0, deviation=10.0, events=800, reduction_pct=20.0),
        MethodScore(method=ATTRIBUTE_FILTER, point="IV", mae=None, deviation=None, events=700, reduction_pct=30.0),
    ]


class TestMarkdownFormatter:
    """Test cases for MarkdownFormatter."""

    def test_numbers(self) -> None:
        """Test fixed-precision seconds and percentages."""
        fmt = MarkdownFormatter()
        assert fmt.format_seconds(1234.56) == "1,234.6"
        assert fmt.format_seconds(None) == "n/a"
        assert fmt.format_percentage(12.345) == "12.3%"
        assert fmt.format_flag(True) == "yes"
        assert fmt.format_flag(None) == "no"

    def test_table(self) -> None:
        """Test pipe tables with right-aligned numeric columns and escaped cells."""
        table = MarkdownFormatter.table(("Name", "Value"), [("a|b", 1)], numeric=(1,))
        assert table.splitlines() == ["| Name | Value |", "| --- | ---: |", "| a\\|b | 1 |"]

    def test_heading(self) -> None:
        """Test heading levels."""
        assert MarkdownFormatter.heading("Budget") == "## Budget"
        assert MarkdownFormatter.heading("Report", level=1) == "# Report"


class TestExperimentReport:
    """Test cases for the markdown report."""

    def test_sections(self, sample_report: OptimizationReport, sample_points: PredictionPointSet) -> None:
        """Test the fixed sections and their key rows."""
        text = ExperimentReportGenerator().render(sample_report, sample_points)
        assert text.startswith("# Log simplification report\n")
        for heading in ("## Prediction points", "## Candidate assessment", "## Budget", "## Applied folds"):
            assert heading in text
        assert "| Spent sum mu x (s) | 12.5 |" in text
        assert "| Limit g x Gamma (s) | 20.0 |" in text
        assert "| Accepted | SelfLoop:CRP |" in text
        assert "| Nowhere | C2 | dropped (no samples) |" in text
        assert "Communities without a point: C3" in text
        assert "FOLD_SelfLoop_1" in text
        assert "## Method comparison" not in text

    def test_assessment_rows(self, sample_report: OptimizationReport, sample_points: PredictionPointSet) -> None:
        """Test the original row and one row per candidate."""
        text = ExperimentReportGenerator().render(sample_report, sample_points)
        assert "| (original) |  |  | 100.0 |  |  |" in text
        assert "| SelfLoop:CRP | SelfLoop | 1 | 112.5 | 12.5 | yes |" in text
        assert "| Sequence:A+B | Sequence | 2 | 60.0 | 40.0 | no |" in text

    def test_communities_and_overview(
        self,
        sample_report: OptimizationReport,
        sample_points: PredictionPointSet,
        example_communities: ResourceCommunityNetwork,
    ) -> None:
        """Test the optional run and community sections."""
        text = ExperimentReportGenerator().render(
            sample_report, sample_points, example_communities, overview={"Seed": 42}
        )
        assert "| Seed | 42 |" in text
        assert "## Resource communities" in text
        assert "| C1 | John, Sue |" in text

    def test_comparison_needs_two_methods(
        self,
        sample_report: OptimizationReport,
        sample_points: PredictionPointSet,
        sample_scores: list[MethodScore],
    ) -> None:
        """Test that the comparison appears once a baseline is present."""
        generator = ExperimentReportGenerator()
        assert "## Method comparison" not in generator.render(sample_report, sample_points, comparisons=sample_scores[:2])
        text = generator.render(sample_report, sample_points, comparisons=sample_scores)
        assert "## Method comparison" in text
        assert "| IV | attribute_filter | n/a | n/a | 700 | 30.0% |" in text

    def test_deterministic(self, sample_report: OptimizationReport, sample_points: PredictionPointSet, tmp_path: Path) -> None:
        """Test that identical inputs write identical files."""
        generator = ExperimentReportGenerator()
        first = generator.generate_report(tmp_path / "a.md", sample_report, sample_points)
        second = generator.generate_report(tmp_path / "b.md", sample_report, sample_points)
        assert first.read_bytes() == second.read_bytes()

    def test_no_candidates(self, sample_report: OptimizationReport, sample_points: PredictionPointSet) -> None:
        """Test placeholders for empty assessment and fold lists."""
        sample_report.assessments = []
        sample_report.manifest = FoldManifest(events_before=10, events_after=10)
        text = ExperimentReportGenerator().render(sample_report, sample_points)
        assert "No candidates." in text
        assert "No folds applied." in text
        assert "| Accepted | none |" in text


class TestCsvExports:
    """Test cases for the CSV tables."""

    def test_assessments(self, sample_report: OptimizationReport, tmp_path: Path) -> None:
        """Test one row per candidate and point, in fixed column order."""
        frame = pd.read_csv(export_assessments(sample_report, tmp_path / "assessments.csv"))
        assert list(frame.columns) == list(ASSESSMENT_COLUMNS)
        assert frame["candidate"].tolist() == ["SelfLoop:CRP", "Sequence:A+B"]
        assert frame["selected"].tolist() == [True, False]
        assert frame["deviation"].tolist() == pytest.approx([12.5, 40.0])

    def test_summary(self, sample_report: OptimizationReport, tmp_path: Path) -> None:
        """Test the per-point summary."""
        frame = pd.read_csv(export_summary(sample_report, tmp_path / "summary.csv"))
        assert frame.loc[0, "point"] == "IV"
        assert frame.loc[0, "reduction_pct"] == pytest.approx(20.0)

    def test_points_mae_with_missing_values(self, sample_scores: list[MethodScore], tmp_path: Path) -> None:
        """Test that a missing MAE is an empty cell."""
        path = export_points_mae(sample_scores, tmp_path / "points_mae.csv")
        frame = pd.read_csv(path)
        assert frame["method"].tolist() == [ORIGINAL, PROPOSED, ATTRIBUTE_FILTER]
        assert pd.isna(frame.loc[2, "mae"])
        assert path.read_text(encoding="utf-8").splitlines()[1] == "original,IV,100.000000,0.000000,1000,0.000000"

    def test_empty_rows_write_header(self, tmp_path: Path) -> None:
        """Test that an empty table still has its header."""
        path = write_rows_csv([], ("a", "b"), tmp_path / "empty.csv")
        assert path.read_text(encoding="utf-8") == "a,b\n"
