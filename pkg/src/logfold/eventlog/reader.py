"""CSV event log reader for logfold."""

from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import ValidationError as PydanticValidationError

from logfold.models.eventlog import Event, EventLog, Trace
from logfold.utils.exceptions import EmptyLogError, InvalidArgumentError, ParseError, SchemaError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)

TIMESTAMP_ISO = "iso"
TIMESTAMP_EPOCH = "epoch"


class EventLogReader:
    """
    Reads event logs from CSV files and parses them into EventLog models.

    Handles column mapping, timestamp parsing (ISO-8601, epoch seconds or an
    explicit strftime pattern) and per-case ordering.
    """

    DEFAULT_COLUMN_MAPPING = {
        "case_id": "case_id",
        "activity": "activity",
        "resource": "resource",
        "timestamp": "timestamp",
    }
    OPTIONAL_COLUMNS = {"start_timestamp": "start_timestamp"}

    def __init__(
        self,
        column_map: Optional[dict[str, str]] = None,
        timestamp_format: str = TIMESTAMP_ISO,
    ) -> None:
        """
        Initialize the reader.

        Args:
            column_map: Logical field name -> CSV header name. Unmapped fields
                use their logical name.
            timestamp_format: ``iso``, ``epoch`` or a strftime pattern
        """
        self.column_map = {**self.DEFAULT_COLUMN_MAPPING, **self.OPTIONAL_COLUMNS}
        if column_map:
            self.column_map.update(column_map)
        self.timestamp_format = timestamp_format

    def read(self, path: str | Path) -> EventLog:
        """
        Parse a CSV file into an EventLog.

        Raises:
            FileNotFoundError: If the file does not exist
            EmptyLogError: If the file holds no rows
            SchemaError: If a mapped column is missing from the header
            ParseError: If a timestamp cannot be parsed (carries the line number)
        """
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Event log file not found: {path}")

        try:
            df = pd.read_csv(
                path,
                dtype=str,
                keep_default_na=False,
                skip_blank_lines=False,
                encoding="utf-8",
            )
        except pd.errors.EmptyDataError as e:
            raise EmptyLogError(f"Event log file is empty: {path}") from e

        # Blank lines come back as all-NaN rows; quoted fields may span lines
        empty = df.isna().all(axis=1).to_numpy()
        df = df.fillna("")
        embedded = df.apply(lambda column: column.str.count("\n")).sum(axis=1).to_numpy()
        lines = 2 + np.arange(len(df)) + np.concatenate(([0], np.cumsum(embedded)[:-1]))
        df = df[~empty].reset_index(drop=True)

        if df.empty:
            raise EmptyLogError(f"Event log file has a header but no rows: {path}")

        return self.read_frame(df, source=str(path), line_numbers=lines[~empty].tolist())

    def read_frame(
        self,
        df: pd.DataFrame,
        source: str = "<frame>",
        line_numbers: Optional[Sequence[int]] = None,
    ) -> EventLog:
        """
        Parse an already-loaded frame of string columns (one row per event).

        ``line_numbers`` gives the file line of each row for error messages;
        by default row ``i`` is line ``i + 2``, below a one-line header.
        Blank extra fields are left out of the event attributes.
        """
        df = df.reset_index(drop=True)
        if line_numbers is None:
            lines = [i + 2 for i in range(len(df))]
        else:
            lines = [int(n) for n in line_numbers]
            if len(lines) != len(df):
                raise InvalidArgumentError(f"{len(lines)} line numbers given for {len(df)} rows")
        columns = self._resolve_columns(df)
        timestamps = self._parse_timestamps(df[columns["timestamp"]], "timestamp", lines)
        start_col = columns.get("start_timestamp")
        starts = (
            self._parse_timestamps(df[start_col], "start_timestamp", lines, allow_blank=True)
            if start_col
            else None
        )

        extra_cols = [c for c in df.columns if c not in columns.values()]
        extras = df[extra_cols].to_dict("records") if extra_cols else [{}] * len(df)
        frame = pd.DataFrame(
            {
                "case_id": df[columns["case_id"]].astype(str),
                "activity": df[columns["activity"]].astype(str),
                "resource": df[columns["resource"]].astype(str),
                "timestamp": timestamps,
                "row_no": range(len(df)),
            }
        )
        if starts is not None:
            frame["start_timestamp"] = starts

        blank = frame[(frame["case_id"].str.strip() == "") | (frame["activity"].str.strip() == "")]
        if not blank.empty:
            line = lines[int(blank["row_no"].iloc[0])]
            raise ParseError(f"Empty case_id or activity at line {line} of {source}", line_number=line)

        case_order = {case: i for i, case in enumerate(frame["case_id"].drop_duplicates())}
        frame["case_order"] = frame["case_id"].map(case_order)
        # Stable: ties on timestamp keep file order
        frame = frame.sort_values(["case_order", "timestamp", "row_no"], kind="mergesort")

        traces: list[Trace] = []
        for _, group in frame.groupby("case_order", sort=True):
            events = []
            for row in group.itertuples(index=False):
                attributes = {c: v for c, v in extras[row.row_no].items() if v != ""}
                try:
                    events.append(
                        Event(
                            case_id=row.case_id,
                            activity=row.activity,
                            resource=row.resource,
                            timestamp=row.timestamp,
                            start_timestamp=getattr(row, "start_timestamp", None),
                            attributes=attributes,
                        )
                    )
                except PydanticValidationError as e:
                    line = lines[int(row.row_no)]
                    raise ParseError(f"Invalid event at line {line}: {e}", line_number=line) from e
            traces.append(Trace(case_id=events[0].case_id, events=tuple(events)))

        log = EventLog(traces=tuple(traces))
        logger.info(
            f"Read {log.event_count} events in {len(log)} traces "
            f"({len(log.activities)} activities, {len(log.resources)} resources) from {source}"
        )
        return log

    def _resolve_columns(self, df: pd.DataFrame) -> dict[str, str]:
        header = {str(c).strip(): c for c in df.columns}
        resolved: dict[str, str] = {}
        for field, column in self.column_map.items():
            if column in header:
                resolved[field] = header[column]
            elif field in self.OPTIONAL_COLUMNS:
                continue
            else:
                available = ", ".join(str(c) for c in df.columns)
                raise SchemaError(
                    f"Missing required column '{column}' (for {field}). Available columns: {available}",
                    column=column,
                )
        return resolved

    def _parse_timestamps(
        self, values: pd.Series, field: str, lines: Sequence[int], allow_blank: bool = False
    ) -> pd.Series:
        raw = values.astype(str).str.strip()
        if self.timestamp_format == TIMESTAMP_EPOCH:
            numeric = pd.to_numeric(raw, errors="coerce")
            parsed = pd.to_datetime(numeric, unit="s", utc=True, errors="coerce")
        elif self.timestamp_format == TIMESTAMP_ISO:
            parsed = pd.to_datetime(raw, utc=True, errors="coerce", format="ISO8601")
        else:
            parsed = pd.to_datetime(raw, utc=True, errors="coerce", format=self.timestamp_format)

        bad = parsed.isna()
        if allow_blank:
            bad &= raw != ""
        if bad.any():
            position = int(bad.to_numpy().nonzero()[0][0])
            line = lines[position]
            raise ParseError(
                f"Unparseable {field} '{raw.iloc[position]}' at line {line} "
                f"(format: {self.timestamp_format})",
                line_number=line,
            )
        if allow_blank:
            return parsed.astype(object).where(parsed.notna(), None)
        return parsed


def parse_csv(
    path: str | Path,
    column_map: Optional[dict[str, str]] = None,
    timestamp_format: str = TIMESTAMP_ISO,
) -> EventLog:
    """Parse a CSV event log (see :class:`EventLogReader`)."""
    return EventLogReader(column_map=column_map, timestamp_format=timestamp_format).read(path)
