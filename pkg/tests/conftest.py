"""Pytest configuration and shared fixtures."""

from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Sequence

import pytest

from logfold.harness.synthetic import SyntheticSpec, generate_synthetic
from logfold.models.eventlog import Event, EventLog, Trace
from logfold.models.network import Community, ResourceCommunityNetwork, SocialNetwork

BASE_TIME = datetime(2024, 1, 1, tzinfo=timezone.utc)

# The five-case example log, in recording order
EXAMPLE_ROWS = [
    ("Case1", "A", "John"),
    ("Case2", "A", "John"),
    ("Case3", "A", "Sue"),
    ("Case3", "B", "Carol"),
    ("Case1", "B", "Mike"),
    ("Case1", "C", "John"),
    ("Case2", "C", "Mike"),
    ("Case4", "A", "Sue"),
    ("Case2", "B", "John"),
    ("Case2", "D", "Pete"),
    ("Case5", "A", "Sue"),
    ("Case4", "C", "Carol"),
    ("Case1", "D", "Pete"),
    ("Case3", "C", "Sue"),
    ("Case3", "D", "Pete"),
    ("Case4", "B", "Sue"),
    ("Case5", "E", "Clare"),
    ("Case5", "D", "Clare"),
    ("Case4", "D", "Pete"),
]

Step = tuple[str, float] | tuple[str, float, str]


@pytest.fixture
def project_root() -> Path:
    """Return the project root directory."""
    return Path(__file__).parent.parent


@pytest.fixture
def example_csv(tmp_path: Path) -> Path:
    """The example log as CSV, one row every ten minutes."""
    lines = ["case_id,activity,resource,timestamp"]
    for i, (case, activity, resource) in enumerate(EXAMPLE_ROWS):
        stamp = (BASE_TIME + timedelta(minutes=10 * i)).strftime("%Y-%m-%dT%H:%M:%SZ")
        lines.append(f"{case},{activity},{resource},{stamp}")
    path = tmp_path / "example.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def example_log() -> EventLog:
    """The example log built in memory (same timestamps as ``example_csv``)."""
    events: dict[str, list[Event]] = {}
    for i, (case, activity, resource) in enumerate(EXAMPLE_ROWS):
        events.setdefault(case, []).append(
            Event(
                case_id=case,
                activity=activity,
                resource=resource,
                timestamp=BASE_TIME + timedelta(minutes=10 * i),
            )
        )
    return EventLog(traces=tuple(Trace(case_id=c, events=tuple(e)) for c, e in events.items()))


@pytest.fixture
def performer_network() -> SocialNetwork:
    """Weighted performer network with three natural groups."""
    return SocialNetwork.from_edges(
        [
            ("John", "Sue", 0.9),
            ("John", "Mike", 0.2),
            ("John", "Carol", 0.2),
            ("Mike", "Carol", 1.0),
            ("Pete", "Clare", 0.6),
        ],
        nodes=["John", "Sue", "Mike", "Carol", "Pete", "Clare"],
    )


@pytest.fixture
def example_communities() -> ResourceCommunityNetwork:
    return ResourceCommunityNetwork(
        communities=(
            Community(id="C1", members=("John", "Sue"), loop_weight=0.9),
            Community(id="C2", members=("Mike", "Carol"), loop_weight=1.0),
            Community(id="C3", members=("Pete", "Clare"), loop_weight=0.6),
        ),
        weights={"C1|C2": 0.4},
    )


@pytest.fixture
def build_log() -> Callable[[dict[str, Sequence[Step]]], EventLog]:
    """
    Factory for small logs: ``{case_id: [(activity, seconds_after_start[, resource]), ...]}``.

    Cases start one day apart, in the given order.
    """

    def build(cases: dict[str, Sequence[Step]]) -> EventLog:
        traces = []
        for day, (case_id, steps) in enumerate(cases.items()):
            start = BASE_TIME + timedelta(days=day)
            events = tuple(
                Event(
                    case_id=case_id,
                    activity=step[0],
                    timestamp=start + timedelta(seconds=step[1]),
                    resource=step[2] if len(step) > 2 else "UNKNOWN",
                )
                for step in steps
            )
            traces.append(Trace(case_id=case_id, events=events))
        return EventLog(traces=tuple(traces))

    return build


@pytest.fixture(scope="session")
def synthetic_log() -> EventLog:
    """A small synthetic sepsis-like log (150 cases, seed 7)."""
    return generate_synthetic(SyntheticSpec(cases=150), seed=7)
