"""Report generation."""

from logfold.reporting.experiment_report import (
    ExperimentReportGenerator,
    export_assessments,
    export_points_mae,
    export_summary,
)
from logfold.reporting.formatting import MarkdownFormatter, write_rows_csv

__all__ = [
    "ExperimentReportGenerator",
    "MarkdownFormatter",
    "export_assessments",
    "export_summary",
    "export_points_mae",
    "write_rows_csv",
]
