"""Event log Pydantic models: Event, Trace, EventLog and ExecutionTime."""

from collections import Counter
from datetime import datetime, timezone
from functools import cached_property
from typing import Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

UNKNOWN_RESOURCE = "UNKNOWN"


def _to_utc_seconds(v: object) -> datetime:
    """Coerce a timestamp to a timezone-aware UTC datetime truncated to seconds."""
    if isinstance(v, pd.Timestamp):
        v = v.to_pydatetime()
    if isinstance(v, (int, float)):
        v = datetime.fromtimestamp(v, tz=timezone.utc)
    if isinstance(v, str):
        v = datetime.fromisoformat(v.replace("Z", "+00:00"))
    if not isinstance(v, datetime):
        raise ValueError(f"Invalid timestamp type: {type(v)}. Expected datetime, epoch or ISO string.")
    if v.tzinfo is None:
        v = v.replace(tzinfo=timezone.utc)
    return v.astimezone(timezone.utc).replace(microsecond=0)


class Event(BaseModel):
    """
    A single recorded event: one activity performed for one case.

    ``start_timestamp`` is only set on events produced by folding a run that
    opens a trace; it marks where the folded interval begins.
    """

    model_config = ConfigDict(frozen=True)

    case_id: str = Field(..., min_length=1, description="Case identifier")
    activity: str = Field(..., min_length=1, description="Activity label")
    resource: str = Field(default=UNKNOWN_RESOURCE, description="Performer label")
    timestamp: datetime = Field(..., description="Completion instant, UTC, second resolution")
    start_timestamp: Optional[datetime] = Field(
        None,
        description="Start of the interval covered by a folded event",
    )
    attributes: dict[str, str] = Field(
        default_factory=dict,
        description="Extra CSV columns, kept as opaque strings",
    )

    @field_validator("timestamp", mode="before")
    @classmethod
    def parse_timestamp(cls, v: object) -> datetime:
        return _to_utc_seconds(v)

    @field_validator("start_timestamp", mode="before")
    @classmethod
    def parse_start_timestamp(cls, v: object) -> Optional[datetime]:
        if v is None or (isinstance(v, float) and pd.isna(v)) or v == "":
            return None
        return _to_utc_seconds(v)

    @field_validator("resource", mode="before")
    @classmethod
    def default_resource(cls, v: object) -> str:
        if v is None or (isinstance(v, float) and pd.isna(v)) or str(v).strip() == "":
            return UNKNOWN_RESOURCE
        return str(v)

    @property
    def epoch(self) -> float:
        """Completion time in seconds since the epoch."""
        return self.timestamp.timestamp()


class Trace(BaseModel):
    """One case: its events in non-decreasing timestamp order."""

    model_config = ConfigDict(frozen=True)

    case_id: str = Field(..., min_length=1)
    events: tuple[Event, ...] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_events(self) -> "Trace":
        previous: Optional[datetime] = None
        for event in self.events:
            if event.case_id != self.case_id:
                raise ValueError(
                    f"Event of case '{event.case_id}' placed in trace '{self.case_id}'"
                )
            if previous is not None and event.timestamp < previous:
                raise ValueError(f"Events of case '{self.case_id}' are not sorted by timestamp")
            previous = event.timestamp
        return self

    @property
    def activities(self) -> tuple[str, ...]:
        return tuple(e.activity for e in self.events)

    @property
    def start(self) -> datetime:
        """Start instant of the case (first event, or its folded start)."""
        first = self.events[0]
        return first.start_timestamp or first.timestamp

    @property
    def end(self) -> datetime:
        return self.events[-1].timestamp

    @property
    def span(self) -> float:
        """Total duration of the case in seconds."""
        return (self.end - self.start).total_seconds()

    def __len__(self) -> int:
        return len(self.events)


class EventLog(BaseModel):
    """
    An event log: a collection of traces with unique case identifiers.

    ``activities`` and ``resources`` are derived from the traces; the
    ``UNKNOWN`` sentinel performer is not counted as a resource.
    """

    model_config = ConfigDict(frozen=True)

    traces: tuple[Trace, ...] = Field(default=())

    @model_validator(mode="after")
    def check_unique_cases(self) -> "EventLog":
        seen: set[str] = set()
        for trace in self.traces:
            if trace.case_id in seen:
                raise ValueError(f"Duplicate case_id in event log: {trace.case_id}")
            seen.add(trace.case_id)
        return self

    @cached_property
    def activities(self) -> frozenset[str]:
        return frozenset(e.activity for t in self.traces for e in t.events)

    @cached_property
    def resources(self) -> frozenset[str]:
        return frozenset(
            e.resource for t in self.traces for e in t.events if e.resource != UNKNOWN_RESOURCE
        )

    @property
    def event_count(self) -> int:
        return sum(len(t.events) for t in self.traces)

    def variants(self) -> Counter[tuple[str, ...]]:
        """Multiset of activity sequences."""
        return Counter(t.activities for t in self.traces)

    def activity_counts(self) -> Counter[str]:
        return Counter(e.activity for t in self.traces for e in t.events)

    def with_traces(self, traces: list[Trace] | tuple[Trace, ...]) -> "EventLog":
        """Return a new log holding ``traces``."""
        return EventLog(traces=tuple(traces))

    def to_frame(self) -> pd.DataFrame:
        """Flatten the log into one row per event, in trace order."""
        rows = []
        for trace in self.traces:
            for event in trace.events:
                row = {
                    "case_id": event.case_id,
                    "activity": event.activity,
                    "resource": event.resource,
                    "timestamp": event.timestamp,
                    "start_timestamp": event.start_timestamp,
                }
                row.update(event.attributes)
                rows.append(row)
        return pd.DataFrame(
            rows, columns=None if rows else ["case_id", "activity", "resource", "timestamp"]
        )

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "EventLog":
        """Build a log from one row per event (the :meth:`to_frame` layout)."""
        from logfold.eventlog.reader import EventLogReader

        text = frame.astype(object).where(frame.notna(), "").astype(str)
        return EventLogReader().read_frame(text)

    def __len__(self) -> int:
        return len(self.traces)


class ExecutionTime(BaseModel):
    """Execution time of one activity occurrence (working plus waiting), in seconds."""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=0)
