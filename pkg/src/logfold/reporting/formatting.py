"""Markdown and CSV formatting utilities for consistent output across all reports."""

from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import pandas as pd

from logfold.utils.atomic import atomic_write_text

MISSING = "n/a"
CSV_FLOAT_FORMAT = "%.6f"


class MarkdownFormatter:
    """
    Provides consistent markdown formatting across all report sections.

    Numbers are rendered with fixed precision so repeated runs produce
    identical text.
    """

    @staticmethod
    def format_seconds(value: Optional[float]) -> str:
        if value is None:
            return MISSING
        return f"{value:,.1f}"

    @staticmethod
    def format_percentage(value: Optional[float]) -> str:
        if value is None:
            return MISSING
        return f"{value:.1f}%"

    @staticmethod
    def format_flag(value: Optional[bool]) -> str:
        return "yes" if value else "no"

    @staticmethod
    def escape(value: Any) -> str:
        return str(value).replace("|", "\\|").replace("\n", " ")

    @staticmethod
    def table(headers: Sequence[str], rows: Iterable[Sequence[Any]], numeric: Sequence[int] = ()) -> str:
        """
        Render a pipe table.

        Args:
            headers: Column titles
            rows: Cells, already formatted or plain values
            numeric: Indices of right-aligned columns
        """
        align = ["---:" if i in numeric else "---" for i in range(len(headers))]
        lines = [
            "| " + " | ".join(MarkdownFormatter.escape(h) for h in headers) + " |",
            "| " + " | ".join(align) + " |",
        ]
        for row in rows:
            lines.append("| " + " | ".join(MarkdownFormatter.escape(c) for c in row) + " |")
        return "\n".join(lines)

    @staticmethod
    def heading(text: str, level: int = 2) -> str:
        return f"{'#' * level} {text}"


def frame_to_csv_text(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def write_rows_csv(rows: list[dict[str, Any]], columns: Sequence[str], path: str | Path) -> Path:
    """Write dict rows as CSV with a fixed column order (header only when empty)."""
    frame = pd.DataFrame(rows, columns=list(columns))
    return atomic_write_text(Path(path), frame_to_csv_text(frame))
