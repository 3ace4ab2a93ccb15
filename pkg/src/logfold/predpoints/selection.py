"""Prediction point selection: one distinct activity per resource community."""

from typing import Iterable, Optional, Sequence

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator

from logfold.models.eventlog import EventLog
from logfold.models.network import ResourceCommunityNetwork
from logfold.utils.exceptions import ConsistencyError, SelectionError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)

OVERRIDE = "override"


class PredictionPointSet(BaseModel):
    """
    Protected prediction points and the community each one represents.

    ``uncovered`` lists communities that received no point because no
    system of distinct representatives exists.
    """

    model_config = ConfigDict(frozen=True)

    points: tuple[str, ...] = Field(..., min_length=1)
    provenance: dict[str, str] = Field(default_factory=dict)
    uncovered: tuple[str, ...] = ()

    @model_validator(mode="after")
    def check_points(self) -> "PredictionPointSet":
        if len(set(self.points)) != len(self.points):
            raise ValueError(f"Prediction points must be distinct: {self.points}")
        stray = set(self.provenance) - set(self.points)
        if stray:
            raise ValueError(f"Provenance given for non-points: {sorted(stray)}")
        return self

    @classmethod
    def from_override(cls, labels: Iterable[str]) -> "PredictionPointSet":
        """User-chosen points, kept in the given order (duplicates dropped)."""
        points = tuple(dict.fromkeys(label.strip() for label in labels if label.strip()))
        if not points:
            raise SelectionError("Prediction point override is empty")
        return cls(points=points, provenance={p: OVERRIDE for p in points})

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self.points)

    @property
    def complete(self) -> bool:
        return not self.uncovered

    def __contains__(self, label: object) -> bool:
        return label in self.points

    def __len__(self) -> int:
        return len(self.points)


def community_activity_sets(
    log: EventLog, rcn: ResourceCommunityNetwork, strict: bool = True
) -> list[frozenset[str]]:
    """
    A_j for every community C_j: activities any member performed anywhere in the log.

    Args:
        log: Event log the network was built from
        rcn: Resource community network
        strict: Raise when a performer never appears in the log; otherwise
            the performer contributes nothing and empty sets are reported

    Raises:
        ConsistencyError: If ``strict`` and a community member is absent from the log
    """
    performed: dict[str, set[str]] = {}
    for trace in log.traces:
        for event in trace.events:
            performed.setdefault(event.resource, set()).add(event.activity)

    activity_sets = []
    for community in rcn.communities:
        missing = [m for m in community.members if m not in performed]
        if missing and strict:
            raise ConsistencyError(
                f"Performers of community {community.id} do not appear in the log: {missing}"
            )
        activities = frozenset(a for m in community.members for a in performed.get(m, ()))
        if not activities:
            logger.warning(f"Community {community.id} ({', '.join(community.members)}) performed no activity")
        activity_sets.append(activities)
    return activity_sets


class _Matcher:
    """Augmenting-path matching of community slots to activities."""

    def __init__(self, activity_sets: Sequence[frozenset[str]]) -> None:
        self.activity_sets = activity_sets
        self.owner: dict[str, int] = {}  # activity -> slot's community index

    def assign(self, community: int, visited: set[str]) -> bool:
        options = sorted(self.activity_sets[community])
        for activity in options:
            if activity not in self.owner:
                self.owner[activity] = community
                return True
        for activity in options:
            if activity in visited or self.owner[activity] == community:
                continue
            visited.add(activity)
            if self.assign(self.owner[activity], visited):
                self.owner[activity] = community
                return True
        return False


def select_prediction_points(
    activity_sets: Sequence[Iterable[str]],
    multiplicity: int = 1,
    community_ids: Optional[Sequence[str]] = None,
) -> PredictionPointSet:
    """
    Pick distinct representatives, ``multiplicity`` per community where possible.

    Communities are served in ascending set-size order, each taking the
    lexicographically smallest free activity; when none is free an
    augmenting path re-routes earlier choices, so the result is a maximum
    matching. Communities left without a point are reported as uncovered.

    Raises:
        SelectionError: If every activity set is empty
    """
    sets = [frozenset(s) for s in activity_sets]
    if not any(sets):
        raise SelectionError("Cannot select prediction points: every community activity set is empty")
    if multiplicity < 1:
        raise SelectionError(f"multiplicity must be >= 1, got {multiplicity}")
    ids = list(community_ids) if community_ids is not None else [f"C{i + 1}" for i in range(len(sets))]
    if len(ids) != len(sets):
        raise SelectionError(f"{len(ids)} community ids given for {len(sets)} activity sets")

    matcher = _Matcher(sets)
    order = sorted(range(len(sets)), key=lambda i: (len(sets[i]), i))
    for _ in range(multiplicity):
        for community in order:
            if sets[community]:
                matcher.assign(community, set())

    chosen: dict[int, list[str]] = {}
    for activity, community in matcher.owner.items():
        chosen.setdefault(community, []).append(activity)
    points = tuple(a for community in order for a in sorted(chosen.get(community, [])))
    provenance = {a: ids[c] for a, c in matcher.owner.items()}
    uncovered = tuple(ids[i] for i in range(len(sets)) if i not in chosen)

    if uncovered:
        logger.warning(
            f"No distinct prediction point available for communities {list(uncovered)}; "
            f"selected a maximum matching of {len(points)} points"
        )
    logger.info(f"Selected prediction points: {', '.join(points)}")
    return PredictionPointSet(points=points, provenance=provenance, uncovered=uncovered)


def validate_sdr(
    points: Iterable[str], activity_sets: Sequence[Iterable[str]], require_full: bool = True
) -> bool:
    """
    Check that ``points`` are distinct representatives of distinct sets.

    With ``require_full`` every set must receive one point (|points| equal to
    the number of sets); otherwise ``points`` need only be matchable.
    """
    points = list(points)
    sets = [frozenset(s) for s in activity_sets]
    if len(set(points)) != len(points):
        return False
    if require_full and len(points) != len(sets):
        return False

    graph = nx.Graph()
    point_nodes = [("point", p) for p in points]
    graph.add_nodes_from(point_nodes, bipartite=0)
    graph.add_nodes_from((("set", i) for i in range(len(sets))), bipartite=1)
    graph.add_edges_from(
        (("point", p), ("set", i)) for p in points for i, s in enumerate(sets) if p in s
    )
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=point_nodes)
    return all(node in matching for node in point_nodes)
