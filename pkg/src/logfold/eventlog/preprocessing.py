"""Log preprocessing applied before discovery."""

from logfold.models.eventlog import EventLog, Trace
from logfold.utils.logging import get_logger

logger = get_logger(__name__)


def group_infrequent_activities(
    log: EventLog, min_count: int = 10, label: str = "other"
) -> EventLog:
    """
    Relabel activities that occur fewer than ``min_count`` times as ``label``.

    A ``min_count`` of 0 or 1 leaves the log untouched.
    """
    counts = log.activity_counts()
    rare = {activity for activity, n in counts.items() if n < min_count}
    if not rare:
        return log

    logger.info(f"Grouping {len(rare)} infrequent activities as '{label}': {sorted(rare)}")
    traces = []
    for trace in log.traces:
        events = tuple(
            e.model_copy(update={"activity": label}) if e.activity in rare else e
            for e in trace.events
        )
        traces.append(Trace(case_id=trace.case_id, events=events))
    return EventLog(traces=tuple(traces))
