"""Alpha-miner process discovery, mapped onto the Gspn model."""

from itertools import combinations, groupby
from typing import Iterable

import pandas as pd

from logfold.models.eventlog import EventLog
from logfold.models.gspn import Arc, Gspn, Transition
from logfold.utils.exceptions import DegenerateNetError, EmptyLogError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)

SOURCE_PLACE = "start"
SINK_PLACE = "end"

CASE_KEY = "case:concept:name"
ACTIVITY_KEY = "concept:name"
TIMESTAMP_KEY = "time:timestamp"


def collapse_runs(activities: tuple[str, ...]) -> tuple[str, ...]:
    """Collapse consecutive repeats: ``(a, a, b, a)`` -> ``(a, b, a)``."""
    return tuple(label for label, _ in groupby(activities))


def self_looping_activities(log: EventLog) -> frozenset[str]:
    """Activities that directly follow themselves in at least one trace."""
    found: set[str] = set()
    for trace in log.traces:
        labels = trace.activities
        found.update(a for a, b in zip(labels, labels[1:]) if a == b)
    return frozenset(found)


def _variant_frame(variants: list[tuple[str, ...]]) -> pd.DataFrame:
    # One synthetic case per distinct variant; only the order matters to alpha.
    rows = []
    base = pd.Timestamp("2000-01-01", tz="UTC")
    for case_no, variant in enumerate(variants):
        for position, label in enumerate(variant):
            rows.append(
                {
                    CASE_KEY: f"v{case_no}",
                    ACTIVITY_KEY: label,
                    TIMESTAMP_KEY: base + pd.Timedelta(seconds=position),
                }
            )
    return pd.DataFrame(rows)


def _node_key(node) -> str:
    return node.label or node.name


def _place_name(inputs: Iterable[str], outputs: Iterable[str]) -> str:
    return f"p({','.join(sorted(inputs))}|{','.join(sorted(outputs))})"


def directly_follows(variants: Iterable[tuple[str, ...]]) -> frozenset[tuple[str, str]]:
    """Pairs ``(a, b)`` where ``b`` directly follows ``a`` in some variant."""
    return frozenset(pair for variant in variants for pair in zip(variant, variant[1:]))


def _exclusive(labels: frozenset[str], follows: frozenset[tuple[str, str]]) -> bool:
    return not any((a, b) in follows for a in labels for b in labels)


def merge_choice_places(
    places: Iterable[tuple[frozenset[str], frozenset[str]]],
    follows: frozenset[tuple[str, str]],
) -> list[tuple[frozenset[str], frozenset[str]]]:
    """
    Merge places that split one exclusive choice over an unobserved pair.

    When a log never shows some member of a choice directly before some
    member of the following choice, alpha yields several overlapping places
    instead of one, and traces taking the unobserved combination no longer
    replay. Two places are merged when their input sets overlap, their
    output sets overlap, and both unions are still free of directly-follows
    pairs. Places around parallel branches never qualify.
    """
    merged = sorted(set(places), key=lambda p: (sorted(p[0]), sorted(p[1])))
    changed = True
    while changed:
        changed = False
        for i, j in combinations(range(len(merged)), 2):
            (ins_a, outs_a), (ins_b, outs_b) = merged[i], merged[j]
            ins, outs = ins_a | ins_b, outs_a | outs_b
            if ins_a & ins_b and outs_a & outs_b and _exclusive(ins, follows) and _exclusive(outs, follows):
                rest = [p for k, p in enumerate(merged) if k not in (i, j)]
                merged = sorted(set(rest) | {(ins, outs)}, key=lambda p: (sorted(p[0]), sorted(p[1])))
                logger.debug(f"Merged choice places into {_place_name(ins, outs)}")
                changed = True
                break
    return merged


def alpha_discover(log: EventLog) -> Gspn:
    """
    Discover a net with the classic alpha algorithm.

    Length-one loops are collapsed before mining and reported on the net's
    ``self_loops``. The miner sees each distinct variant once, in sorted
    order, so the result only depends on the variant set. Choice places
    split by an unobserved pair are merged (see :func:`merge_choice_places`).
    Places are named from their input/output label sets so identifiers are
    stable across runs.

    Raises:
        EmptyLogError: If the log holds no traces
        DegenerateNetError: If the log holds a single distinct activity
    """
    import pm4py

    if len(log) == 0:
        raise EmptyLogError("Cannot discover a net from an empty log")
    if len(log.activities) < 2:
        raise DegenerateNetError(
            f"Alpha discovery needs at least 2 distinct activities, got {sorted(log.activities)}"
        )

    variants = sorted({collapse_runs(t.activities) for t in log.traces})
    frame = _variant_frame(variants)
    pm_net, initial_marking, final_marking = pm4py.discover_petri_net_alpha(
        frame,
        activity_key=ACTIVITY_KEY,
        timestamp_key=TIMESTAMP_KEY,
        case_id_key=CASE_KEY,
    )

    transition_ids = {
        _node_key(t): f"t:{t.label}" if t.label is not None else f"tau:{t.name}"
        for t in pm_net.transitions
    }

    arcs: set[tuple[str, str]] = set()
    internal = []
    for place in pm_net.places:
        if place in initial_marking:
            arcs.update((SOURCE_PLACE, transition_ids[_node_key(a.target)]) for a in place.out_arcs)
        elif place in final_marking:
            arcs.update((transition_ids[_node_key(a.source)], SINK_PLACE) for a in place.in_arcs)
        else:
            inputs = frozenset(_node_key(a.source) for a in place.in_arcs)
            outputs = frozenset(_node_key(a.target) for a in place.out_arcs)
            internal.append((inputs, outputs))

    places = [SOURCE_PLACE, SINK_PLACE]
    for inputs, outputs in merge_choice_places(internal, directly_follows(variants)):
        name = _place_name(inputs, outputs)
        places.append(name)
        arcs.update((transition_ids[label], name) for label in inputs)
        arcs.update((name, transition_ids[label]) for label in outputs)

    net = Gspn(
        places=tuple(sorted(places)),
        transitions=tuple(
            sorted(
                (
                    Transition(id=tid, label=None if tid.startswith("tau:") else label)
                    for label, tid in transition_ids.items()
                ),
                key=lambda t: t.id,
            )
        ),
        arcs=tuple(Arc(source=source, target=target) for source, target in sorted(arcs)),
        initial_place=SOURCE_PLACE,
        final_place=SINK_PLACE,
        self_loops=self_looping_activities(log),
    )
    logger.info(
        f"Discovered net: {len(net.places)} places, {len(net.transitions)} transitions, "
        f"{len(net.arcs)} arcs from {len(variants)} variants"
    )
    if net.self_loops:
        logger.debug(f"Self-looping activities: {sorted(net.self_loops)}")
    return net
