"""Filter baselines the folding approach is compared against."""

from typing import Iterable, Optional

import numpy as np

from logfold.models.eventlog import EventLog, Trace
from logfold.utils.exceptions import InvalidArgumentError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_ATTRIBUTE_ACTIVITY = "CRP"
DEFAULT_VALUE_ATTRIBUTE = "value"
# mg/L; values at or below count as normal
CRP_NORMAL_UPPER = 10.0
SEPSIS_STARTS = ("ER Registration", "ER Triage", "ER Sepsis Triage")
SEPSIS_ENDS = ("Release A", "Release B", "Release C", "Release D")


def baseline_attribute_filter(
    log: EventLog,
    activity: str,
    fraction: float = 1.0,
    seed: int = 42,
    protected: Iterable[str] = (),
) -> EventLog:
    """
    Drop ``round(fraction * n)`` of the ``n`` eligible events labelled ``activity``.

    Events are drawn uniformly with the seed; a trace that loses all its
    events is dropped. When ``activity`` is in ``protected`` (a prediction
    point), its first occurrence in each trace is never eligible, so the
    point stays reachable. An activity absent from the log leaves it
    unchanged.

    Raises:
        InvalidArgumentError: If ``fraction`` is outside [0, 1]
    """
    if not 0.0 <= fraction <= 1.0:
        raise InvalidArgumentError(f"Drop fraction must lie in [0, 1], got {fraction}")
    keep_first = activity in set(protected)
    positions = []
    for t, trace in enumerate(log.traces):
        seen = False
        for e, event in enumerate(trace.events):
            if event.activity != activity:
                continue
            if seen or not keep_first:
                positions.append((t, e))
            seen = True
    if not positions:
        if activity not in log.activities:
            logger.warning(f"Attribute filter: activity '{activity}' not in the log; log unchanged")
        return log
    n_drop = int(round(fraction * len(positions)))
    if n_drop == 0:
        return log

    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(positions), size=n_drop, replace=False)
    dropped: dict[int, set[int]] = {}
    for i in chosen:
        t, e = positions[int(i)]
        dropped.setdefault(t, set()).add(e)

    traces: list[Trace] = []
    for t, trace in enumerate(log.traces):
        if t not in dropped:
            traces.append(trace)
            continue
        events = tuple(ev for e, ev in enumerate(trace.events) if e not in dropped[t])
        if events:
            traces.append(Trace(case_id=trace.case_id, events=events))
    result = log.with_traces(traces)
    logger.info(
        f"Attribute filter on '{activity}': dropped {n_drop}/{len(positions)} events, "
        f"{log.event_count} -> {result.event_count} events"
    )
    return result


def _value(raw: Optional[str]) -> Optional[float]:
    try:
        return float(raw) if raw not in (None, "") else None
    except ValueError:
        return None


def carries_values(log: EventLog, activity: str, attribute: str = DEFAULT_VALUE_ATTRIBUTE) -> bool:
    """Whether some ``activity`` event reports a numeric ``attribute``."""
    return any(
        _value(event.attributes.get(attribute)) is not None
        for trace in log.traces
        for event in trace.events
        if event.activity == activity
    )


def baseline_value_filter(
    log: EventLog,
    activity: str = DEFAULT_ATTRIBUTE_ACTIVITY,
    attribute: str = DEFAULT_VALUE_ATTRIBUTE,
    normal_upper: float = CRP_NORMAL_UPPER,
) -> EventLog:
    """
    Drop the cases whose ``activity`` values are all normal.

    A case is normal when it reports at least one numeric ``attribute`` on
    ``activity`` and none of them exceeds ``normal_upper``. Cases without
    such a value are kept.
    """
    kept = []
    for trace in log.traces:
        values = [
            v
            for v in (_value(e.attributes.get(attribute)) for e in trace.events if e.activity == activity)
            if v is not None
        ]
        if values and max(values) <= normal_upper:
            continue
        kept.append(trace)
    result = log.with_traces(kept)
    if not kept:
        logger.warning(f"Value filter on '{activity}.{attribute}' kept no trace")
    logger.info(
        f"Value filter on '{activity}.{attribute}' <= {normal_upper}: kept {len(result)}/{len(log)} traces"
    )
    return result


def baseline_endpoints_filter(log: EventLog, starts: Iterable[str], ends: Iterable[str]) -> EventLog:
    """
    Keep traces whose first activity is in ``starts`` and last is in ``ends``.

    An empty label set puts no constraint on that end of the trace.
    """
    starts = frozenset(starts)
    ends = frozenset(ends)
    kept = [
        trace
        for trace in log.traces
        if (not starts or trace.events[0].activity in starts)
        and (not ends or trace.events[-1].activity in ends)
    ]
    if not kept:
        logger.warning(
            f"Endpoint filter kept no trace (starts={sorted(starts)}, ends={sorted(ends)})"
        )
    result = log.with_traces(kept)
    logger.info(f"Endpoint filter: kept {len(result)}/{len(log)} traces")
    return result
