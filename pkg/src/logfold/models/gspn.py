"""Generalised stochastic Petri net and fold candidate models."""

from enum import Enum
from functools import cached_property
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Transition(BaseModel):
    """A net transition; visible when it carries an activity label."""

    model_config = ConfigDict(frozen=True)

    id: str = Field(..., min_length=1)
    label: Optional[str] = Field(None, description="Activity label; None for invisible transitions")

    @property
    def visible(self) -> bool:
        return self.label is not None


class Arc(BaseModel):
    """A weighted arc between a place and a transition (either direction)."""

    model_config = ConfigDict(frozen=True)

    source: str
    target: str
    weight: int = Field(default=1, ge=1)


class Gspn(BaseModel):
    """
    GSPN structure PN = (P, T, F, W, A).

    Delays are not modelled on the net: timing lives in the event log.
    ``self_loops`` lists activities observed directly repeating in the log the
    net was mined from (plain α cannot express them as arcs).
    """

    model_config = ConfigDict(frozen=True)

    places: tuple[str, ...]
    transitions: tuple[Transition, ...]
    arcs: tuple[Arc, ...]
    initial_place: Optional[str] = None
    final_place: Optional[str] = None
    self_loops: frozenset[str] = Field(default_factory=frozenset)

    @model_validator(mode="after")
    def check_structure(self) -> "Gspn":
        place_ids = set(self.places)
        if len(place_ids) != len(self.places):
            raise ValueError("Duplicate place identifiers in net")
        transition_ids = {t.id for t in self.transitions}
        if len(transition_ids) != len(self.transitions):
            raise ValueError("Duplicate transition identifiers in net")
        if place_ids & transition_ids:
            raise ValueError(f"Identifiers used for both places and transitions: {sorted(place_ids & transition_ids)}")
        for arc in self.arcs:
            p_to_t = arc.source in place_ids and arc.target in transition_ids
            t_to_p = arc.source in transition_ids and arc.target in place_ids
            if not (p_to_t or t_to_p):
                raise ValueError(f"Arc {arc.source}->{arc.target} must connect a place and a transition")
        for boundary in (self.initial_place, self.final_place):
            if boundary is not None and boundary not in place_ids:
                raise ValueError(f"Boundary place '{boundary}' is not a place of the net")
        return self

    @property
    def activities(self) -> frozenset[str]:
        return frozenset(t.label for t in self.transitions if t.label is not None)

    @cached_property
    def input_index(self) -> dict[str, tuple[str, ...]]:
        index: dict[str, list[str]] = {}
        for arc in self.arcs:
            index.setdefault(arc.target, []).append(arc.source)
        return {node: tuple(sorted(sources)) for node, sources in index.items()}

    @cached_property
    def output_index(self) -> dict[str, tuple[str, ...]]:
        index: dict[str, list[str]] = {}
        for arc in self.arcs:
            index.setdefault(arc.source, []).append(arc.target)
        return {node: tuple(sorted(targets)) for node, targets in index.items()}

    def preset(self, node: str) -> tuple[str, ...]:
        """Input nodes of a place or transition, sorted."""
        return self.input_index.get(node, ())

    def postset(self, node: str) -> tuple[str, ...]:
        """Output nodes of a place or transition, sorted."""
        return self.output_index.get(node, ())

    def transition(self, transition_id: str) -> Transition:
        for t in self.transitions:
            if t.id == transition_id:
                return t
        raise KeyError(transition_id)

    def transitions_labelled(self, label: str) -> tuple[Transition, ...]:
        return tuple(t for t in self.transitions if t.label == label)

    def arc_weight(self, source: str, target: str) -> int:
        for arc in self.arcs:
            if arc.source == source and arc.target == target:
                return arc.weight
        raise KeyError((source, target))


class FoldKind(str, Enum):
    """Shapes of reducible substructure."""

    SEQUENCE = "Sequence"
    OR = "Or"
    SELF_LOOP = "SelfLoop"


class FoldCandidate(BaseModel):
    """A reducible substructure N_i and its activity count k_i."""

    model_config = ConfigDict(frozen=True)

    kind: FoldKind
    member_activities: tuple[str, ...] = Field(..., min_length=1)
    entry: str = Field(..., description="Input place of the substructure")
    exit: str = Field(..., description="Output place of the substructure")
    activity_count: int = Field(..., ge=1)

    @model_validator(mode="after")
    def check_shape(self) -> "FoldCandidate":
        members = self.member_activities
        if len(set(members)) != len(members):
            raise ValueError(f"Repeated member activity in {self.kind.value} candidate: {members}")
        if self.kind in (FoldKind.SEQUENCE, FoldKind.OR):
            if len(members) < 2:
                raise ValueError(f"{self.kind.value} candidate needs at least 2 members")
            if self.activity_count != len(members):
                raise ValueError("activity_count must equal the number of members")
        else:
            if len(members) != 1:
                raise ValueError("SelfLoop candidate has exactly one member")
            if self.activity_count != 1:
                raise ValueError("SelfLoop candidate has activity_count 1")
        return self

    @property
    def name(self) -> str:
        """Stable identifier, used for reporting and tie-breaking."""
        return f"{self.kind.value}:{'+'.join(self.member_activities)}"

    @classmethod
    def build(
        cls, kind: FoldKind, members: list[str] | tuple[str, ...], entry: str, exit: str
    ) -> "FoldCandidate":
        count = 1 if kind == FoldKind.SELF_LOOP else len(members)
        return cls(kind=kind, member_activities=tuple(members), entry=entry, exit=exit, activity_count=count)
