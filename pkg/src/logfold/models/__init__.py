"""Data models for logfold."""

from logfold.models.eventlog import UNKNOWN_RESOURCE, Event, EventLog, ExecutionTime, Trace
from logfold.models.gspn import Arc, FoldCandidate, FoldKind, Gspn, Transition
from logfold.models.network import (
    Community,
    CommunityMove,
    Partition,
    ResourceCommunityNetwork,
    SocialNetwork,
)
from logfold.models.report import MethodScore

__all__ = [
    "UNKNOWN_RESOURCE",
    "Event",
    "Trace",
    "EventLog",
    "ExecutionTime",
    "Arc",
    "Transition",
    "Gspn",
    "FoldKind",
    "FoldCandidate",
    "SocialNetwork",
    "Partition",
    "Community",
    "CommunityMove",
    "ResourceCommunityNetwork",
    "MethodScore",
]
