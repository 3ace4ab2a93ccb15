"""Index encoding of trace prefixes cut at a prediction point."""

from dataclasses import dataclass, field
from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field

from logfold.eventlog.timing import durations, remaining_time
from logfold.models.eventlog import EventLog
from logfold.utils.exceptions import EmptySampleError, InvalidArgumentError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)

PADDING_ID = 0


@dataclass(frozen=True)
class ActivityEncoder:
    """
    Stable activity dictionary: ids 1..n by sorted label, 0 for padding,
    n + 1 for labels unseen at training time.
    """

    vocabulary: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", {label: i + 1 for i, label in enumerate(self.vocabulary)})

    @classmethod
    def fit(cls, activities: Iterable[str]) -> "ActivityEncoder":
        return cls(vocabulary=tuple(sorted(set(activities))))

    @classmethod
    def from_log(cls, log: EventLog) -> "ActivityEncoder":
        return cls.fit(log.activities)

    @property
    def unknown_id(self) -> int:
        return len(self.vocabulary) + 1

    def encode(self, label: str) -> int:
        return self.index.get(label, self.unknown_id)


class PrefixSample(BaseModel):
    """An encoded prefix and its remaining-time target."""

    model_config = ConfigDict(frozen=True)

    case_id: str
    features: tuple[float, ...] = Field(..., min_length=2)
    target: float = Field(..., ge=0)


def encode_prefix(
    activities: tuple[str, ...], times: list[float], encoder: ActivityEncoder, prefix_len: int
) -> tuple[float, ...]:
    """
    Interleave ``[id, execution_time]`` for the last ``prefix_len`` events,
    zero-padded at the end to ``2 * prefix_len`` values.
    """
    kept = list(zip(activities, times))[-prefix_len:]
    features: list[float] = []
    for label, seconds in kept:
        features.extend((float(encoder.encode(label)), float(seconds)))
    features.extend([float(PADDING_ID)] * (2 * prefix_len - len(features)))
    return tuple(features)


def extract_prefixes(
    log: EventLog,
    point: str,
    prefix_len: int,
    encoder: Optional[ActivityEncoder] = None,
) -> list[PrefixSample]:
    """
    One sample per trace containing ``point``, cut at its first occurrence.

    Args:
        log: Event log
        point: Prediction point activity
        prefix_len: Events kept per prefix (most recent first to go)
        encoder: Activity dictionary of the training log; built from ``log`` if omitted

    Raises:
        InvalidArgumentError: If ``prefix_len`` < 1
        EmptySampleError: If no trace contains ``point``
    """
    if prefix_len < 1:
        raise InvalidArgumentError(f"prefix_len must be >= 1, got {prefix_len}")
    encoder = encoder or ActivityEncoder.from_log(log)

    samples = []
    for trace in log.traces:
        activities = trace.activities
        if point not in activities:
            continue
        cut = activities.index(point)
        features = encode_prefix(activities[: cut + 1], durations(trace)[: cut + 1], encoder, prefix_len)
        samples.append(
            PrefixSample(case_id=trace.case_id, features=features, target=remaining_time(trace, cut))
        )

    if not samples:
        raise EmptySampleError(f"No trace contains prediction point '{point}'")
    logger.debug(f"Extracted {len(samples)} prefixes at '{point}' from {len(log)} traces")
    return samples
