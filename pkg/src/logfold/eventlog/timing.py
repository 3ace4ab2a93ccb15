"""Derived timing features and temporal splitting of event logs."""

import math

from logfold.models.eventlog import EventLog, ExecutionTime, Trace
from logfold.utils.exceptions import EmptyLogError, InvalidArgumentError


def execution_times(trace: Trace) -> list[tuple[str, ExecutionTime]]:
    """
    Execution time of every event as the gap to the previous event.

    The first event gets 0, or ``timestamp - start_timestamp`` when it is a
    folded event that records where its interval began.
    """
    result: list[tuple[str, ExecutionTime]] = []
    previous = None
    for event in trace.events:
        if previous is None:
            start = event.start_timestamp or event.timestamp
            seconds = (event.timestamp - start).total_seconds()
        else:
            seconds = (event.timestamp - previous).total_seconds()
        result.append((event.activity, ExecutionTime(value=seconds)))
        previous = event.timestamp
    return result


def durations(trace: Trace) -> list[float]:
    """Execution times as plain seconds."""
    return [et.value for _, et in execution_times(trace)]


def remaining_time(trace: Trace, index: int) -> float:
    """
    Seconds from the event at ``index`` to the last event of the trace.

    Raises:
        InvalidArgumentError: If ``index`` is outside the trace
    """
    if index < 0 or index >= len(trace.events):
        raise InvalidArgumentError(
            f"Event index {index} out of range for trace '{trace.case_id}' "
            f"with {len(trace.events)} events"
        )
    return (trace.events[-1].timestamp - trace.events[index].timestamp).total_seconds()


def temporal_split(log: EventLog, fraction: float = 0.8) -> tuple[EventLog, EventLog]:
    """
    Split a log in time: the earliest-starting traces train, the rest test.

    Traces are ordered by start time, ties by case_id (lexical); the first
    ``ceil(fraction * n)`` go to the training log.

    Raises:
        InvalidArgumentError: If ``fraction`` is not strictly between 0 and 1
        EmptyLogError: If the log has no traces
    """
    if not 0.0 < fraction < 1.0:
        raise InvalidArgumentError(f"Split fraction must lie in (0, 1), got {fraction}")
    if not log.traces:
        raise EmptyLogError("Cannot split an empty event log")

    ordered = sorted(log.traces, key=lambda t: (t.start, t.case_id))
    n_train = math.ceil(fraction * len(ordered))
    return EventLog(traces=tuple(ordered[:n_train])), EventLog(traces=tuple(ordered[n_train:]))
