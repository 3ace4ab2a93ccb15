"""CSV event log writer for logfold."""

import io
from pathlib import Path

import pandas as pd

from logfold.models.eventlog import EventLog
from logfold.utils.atomic import atomic_write_text
from logfold.utils.logging import get_logger

logger = get_logger(__name__)

ISO_SECONDS = "%Y-%m-%dT%H:%M:%SZ"


def log_to_csv_text(log: EventLog) -> str:
    """
    Render an EventLog in the default CSV schema.

    Columns: ``case_id,activity,resource,timestamp``, then ``start_timestamp``
    when any event carries one, then extra attribute columns in sorted order.
    """
    extra = sorted({key for t in log.traces for e in t.events for key in e.attributes})
    has_start = any(e.start_timestamp is not None for t in log.traces for e in t.events)

    columns = ["case_id", "activity", "resource", "timestamp"]
    if has_start:
        columns.append("start_timestamp")
    columns.extend(extra)

    rows = []
    for trace in log.traces:
        for event in trace.events:
            row = [event.case_id, event.activity, event.resource, event.timestamp.strftime(ISO_SECONDS)]
            if has_start:
                row.append(
                    event.start_timestamp.strftime(ISO_SECONDS) if event.start_timestamp else ""
                )
            row.extend(event.attributes.get(key, "") for key in extra)
            rows.append(row)

    buffer = io.StringIO()
    pd.DataFrame(rows, columns=columns).to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def write_csv(log: EventLog, path: str | Path) -> Path:
    """Write ``log`` atomically to ``path`` in the default CSV schema."""
    written = atomic_write_text(path, log_to_csv_text(log))
    logger.info(f"Wrote {log.event_count} events in {len(log)} traces to {written}")
    return written
