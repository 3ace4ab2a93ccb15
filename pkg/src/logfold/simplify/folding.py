"""Per-kind folds of event logs: sequence runs, or-choices and self-loop repeats."""

from datetime import timedelta
from typing import Optional

from logfold.eventlog.timing import durations
from logfold.models.eventlog import Event, EventLog, Trace
from logfold.models.gspn import FoldCandidate, FoldKind
from logfold.utils.exceptions import InvalidArgumentError, NotApplicableError

FOLD_PREFIX = "FOLD"


def fold_label(kind: FoldKind, number: int) -> str:
    """Fresh activity label ``FOLD_<kind>_<n>``."""
    return f"{FOLD_PREFIX}_{kind.value}_{number}"


def _require_kind(cand: FoldCandidate, kind: FoldKind) -> None:
    if cand.kind != kind:
        raise InvalidArgumentError(f"Expected a {kind.value} candidate, got {cand.kind.value} ({cand.name})")


def collapse_runs(trace: Trace, runs: list[tuple[int, int]], label: str) -> Trace:
    """
    Replace each inclusive index run with a single event labelled ``label``.

    The new event takes the timestamp, resource and attributes of the run's
    last event, so its execution time is the sum of the run's execution
    times. A run opening the trace keeps the trace start in ``start_timestamp``.
    """
    if not runs:
        return trace
    events: list[Event] = []
    cursor = 0
    for first, last in runs:
        events.extend(trace.events[cursor:first])
        head, tail = trace.events[first], trace.events[last]
        start = None
        if first == 0:
            start = head.start_timestamp or head.timestamp
            if start == tail.timestamp:
                start = None
        events.append(
            Event(
                case_id=trace.case_id,
                activity=label,
                resource=tail.resource,
                timestamp=tail.timestamp,
                start_timestamp=start,
                attributes=dict(tail.attributes),
            )
        )
        cursor = last + 1
    events.extend(trace.events[cursor:])
    return Trace(case_id=trace.case_id, events=tuple(events))


def sequence_runs(activities: tuple[str, ...], members: tuple[str, ...]) -> list[tuple[int, int]]:
    """Non-overlapping contiguous occurrences of ``members`` in order, left to right."""
    runs = []
    size = len(members)
    i = 0
    while i + size <= len(activities):
        if activities[i : i + size] == members:
            runs.append((i, i + size - 1))
            i += size
        else:
            i += 1
    return runs


def repeat_runs(activities: tuple[str, ...], member: str) -> list[tuple[int, int]]:
    """Maximal runs of consecutive ``member`` occurrences (length >= 1)."""
    runs = []
    i = 0
    while i < len(activities):
        if activities[i] == member:
            j = i
            while j + 1 < len(activities) and activities[j + 1] == member:
                j += 1
            runs.append((i, j))
            i = j + 1
        else:
            i += 1
    return runs


def fold_sequence(trace: Trace, cand: FoldCandidate, label: Optional[str] = None) -> Trace:
    """
    Fold every contiguous run of the candidate's members (in order) into one event.

    The folded event's execution time is the sum of the members' execution
    times; the trace span is unchanged. Traces without the run pass through.
    """
    _require_kind(cand, FoldKind.SEQUENCE)
    runs = sequence_runs(trace.activities, cand.member_activities)
    return collapse_runs(trace, runs, label or fold_label(cand.kind, 1))


def fold_self_loop(trace: Trace, cand: FoldCandidate, label: Optional[str] = None) -> Trace:
    """
    Collapse each maximal run of m >= 1 repeats of the member into one event
    whose execution time is the sum of the m occurrences.
    """
    _require_kind(cand, FoldKind.SELF_LOOP)
    runs = repeat_runs(trace.activities, cand.member_activities[0])
    return collapse_runs(trace, runs, label or fold_label(cand.kind, 1))


def or_delay(log: EventLog, cand: FoldCandidate) -> tuple[float, int]:
    """
    Pooled delay of an or-choice and the number n of traces it is based on.

    Averages the member's execution time over traces holding exactly one
    member event; this equals the frequency-weighted mean of the per-member
    mean delays.
    """
    members = set(cand.member_activities)
    total = 0.0
    n = 0
    for trace in log.traces:
        positions = [i for i, a in enumerate(trace.activities) if a in members]
        if len(positions) != 1:
            continue
        total += durations(trace)[positions[0]]
        n += 1
    return (total / n if n else 0.0), n


def _relabel(trace: Trace, members: set[str], label: str, delay: Optional[float]) -> Trace:
    events: list[Event] = []
    shift = timedelta(0)
    previous = None
    for index, event in enumerate(trace.events):
        timestamp = event.timestamp + shift
        start = event.start_timestamp + shift if event.start_timestamp else None
        activity = event.activity
        if event.activity in members:
            activity = label
            if delay is not None:
                base = previous if previous is not None else (start or timestamp)
                new_timestamp = base + timedelta(seconds=delay)
                shift += new_timestamp - timestamp
                timestamp = new_timestamp
                if index == 0:
                    start = base if base != timestamp else None
        events.append(
            Event(
                case_id=event.case_id,
                activity=activity,
                resource=event.resource,
                timestamp=timestamp,
                start_timestamp=start,
                attributes=dict(event.attributes),
            )
        )
        previous = timestamp
    return Trace(case_id=trace.case_id, events=tuple(events))


def fold_or(
    log: EventLog,
    cand: FoldCandidate,
    label: Optional[str] = None,
    overwrite_delay: bool = False,
) -> tuple[EventLog, float]:
    """
    Relabel every member event of an or-choice and report its pooled delay.

    Member events keep their own durations unless ``overwrite_delay`` is set,
    in which case each takes the pooled delay and later events shift.

    Raises:
        NotApplicableError: If no trace holds exactly one member event
    """
    _require_kind(cand, FoldKind.OR)
    delay, n = or_delay(log, cand)
    if n == 0:
        raise NotApplicableError(f"No trace holds exactly one member of {cand.name}")
    members = set(cand.member_activities)
    target = label or fold_label(cand.kind, 1)
    traces = [
        _relabel(t, members, target, delay if overwrite_delay else None)
        if members & set(t.activities)
        else t
        for t in log.traces
    ]
    return log.with_traces(traces), delay
