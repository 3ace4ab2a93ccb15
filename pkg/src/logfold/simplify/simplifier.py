"""Joint simplification of an event log and its net by accepted folds."""

from typing import Iterable, Optional, Sequence

from logfold.models.eventlog import EventLog
from logfold.models.gspn import Arc, FoldCandidate, FoldKind, Gspn, Transition
from logfold.simplify.folding import fold_label, fold_or, fold_self_loop, fold_sequence, or_delay
from logfold.simplify.manifest import DELAY_RULES, FoldedActivity, FoldManifest
from logfold.utils.exceptions import InvalidArgumentError, ProtectionViolationError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)


def check_disjoint(candidates: list[FoldCandidate]) -> None:
    """
    Raises:
        InvalidArgumentError: If two candidates share an activity
    """
    seen: dict[str, str] = {}
    for cand in candidates:
        for activity in cand.member_activities:
            if activity in seen:
                raise InvalidArgumentError(
                    f"Candidates {seen[activity]} and {cand.name} overlap on activity '{activity}'"
                )
            seen[activity] = cand.name


def _fresh_labels(candidates: list[FoldCandidate], taken: set[str]) -> list[str]:
    labels = []
    counters: dict[FoldKind, int] = {}
    for cand in candidates:
        n = counters.get(cand.kind, 0) + 1
        while fold_label(cand.kind, n) in taken:
            n += 1
        counters[cand.kind] = n
        label = fold_label(cand.kind, n)
        taken.add(label)
        labels.append(label)
    return labels


def fresh_labels(candidates: list[FoldCandidate], log: EventLog, net: Gspn) -> list[str]:
    """Labels ``simplify_log`` would assign to ``candidates`` on this log and net."""
    return _fresh_labels(candidates, set(log.activities) | net.activities)


def rewrite_net(net: Gspn, cand: FoldCandidate, label: str) -> Gspn:
    """
    Replace the candidate's subnet with one visible transition.

    Sequence and Or subnets become ``entry -> t_alpha -> exit``; a self-loop
    transition is relabelled in place. Places left without arcs are dropped.
    Returns ``net`` unchanged when the members are not in the net.
    """
    members = set(cand.member_activities)
    removed = {t.id for t in net.transitions if t.label in members}
    if not removed:
        return net

    new_id = f"t:{label}"
    kept_arcs = [a for a in net.arcs if a.source not in removed and a.target not in removed]
    if cand.kind == FoldKind.SELF_LOOP:
        added = {
            (new_id if a.source in removed else a.source, new_id if a.target in removed else a.target): a.weight
            for a in net.arcs
            if a.source in removed or a.target in removed
        }
        new_arcs = [Arc(source=s, target=t, weight=w) for (s, t), w in added.items()]
    else:
        new_arcs = [Arc(source=cand.entry, target=new_id), Arc(source=new_id, target=cand.exit)]
    arcs = kept_arcs + new_arcs

    used = {a.source for a in arcs} | {a.target for a in arcs}
    boundary = {net.initial_place, net.final_place}
    places = tuple(p for p in net.places if p in used or p in boundary)
    transitions = tuple(
        sorted(
            [t for t in net.transitions if t.id not in removed] + [Transition(id=new_id, label=label)],
            key=lambda t: t.id,
        )
    )
    return Gspn(
        places=places,
        transitions=transitions,
        arcs=tuple(sorted(arcs, key=lambda a: (a.source, a.target))),
        initial_place=net.initial_place,
        final_place=net.final_place,
        self_loops=net.self_loops - members,
    )


def simplify_log(
    log: EventLog,
    net: Gspn,
    accepted: list[FoldCandidate],
    protected: Iterable[str] = (),
    overwrite_or_delay: bool = False,
    labels: Optional[Sequence[str]] = None,
) -> tuple[EventLog, Gspn, list[FoldedActivity]]:
    """
    Apply the accepted folds to every trace and to the net.

    Fresh labels follow ``FOLD_<kind>_<n>`` (numbered per kind, skipping
    labels already used by the log) unless ``labels`` gives one per
    candidate, which keeps a train and a test log folded alike. A candidate
    that matches no trace and no net transition leaves both untouched, so
    re-applying the same candidates to a folded log is the identity.

    Raises:
        InvalidArgumentError: If candidates overlap or labels do not match them
        ProtectionViolationError: If a candidate contains a protected activity
    """
    check_disjoint(accepted)
    protected = frozenset(protected)
    for cand in accepted:
        hit = protected & set(cand.member_activities)
        if hit:
            raise ProtectionViolationError(f"Candidate {cand.name} would fold prediction points {sorted(hit)}")

    if labels is None:
        labels = fresh_labels(accepted, log, net)
    elif len(labels) != len(accepted):
        raise InvalidArgumentError(f"{len(labels)} labels given for {len(accepted)} candidates")
    folded: list[FoldedActivity] = []
    current_log, current_net = log, net
    for cand, label in zip(accepted, labels):
        members = set(cand.member_activities)
        touched = sum(1 for t in current_log.traces if members & set(t.activities))
        before = current_log.event_count
        pooled = None

        if touched:
            if cand.kind == FoldKind.OR:
                pooled, n = or_delay(current_log, cand)
                if n:
                    current_log, pooled = fold_or(current_log, cand, label, overwrite_or_delay)
                else:
                    logger.warning(f"{cand.name}: no trace holds exactly one member; left unfolded")
                    touched = 0
            else:
                fold = fold_sequence if cand.kind == FoldKind.SEQUENCE else fold_self_loop
                traces = [fold(t, cand, label) for t in current_log.traces]
                touched = sum(1 for new, old in zip(traces, current_log.traces) if new is not old)
                current_log = current_log.with_traces(traces)

        if cand.kind == FoldKind.OR and not touched:
            next_net = current_net
        else:
            next_net = rewrite_net(current_net, cand, label)
        if not touched and next_net is current_net:
            logger.debug(f"{cand.name} does not apply; skipped")
            continue
        current_net = next_net
        record = FoldedActivity(
            label=label,
            kind=cand.kind,
            replaced=cand.member_activities,
            delay_rule=DELAY_RULES[cand.kind],
            pooled_delay=pooled,
            traces_touched=touched,
            events_removed=before - current_log.event_count,
        )
        folded.append(record)
        logger.debug(
            f"Folded {cand.name} into {label}: {touched} traces, {record.events_removed} events removed"
        )

    logger.info(
        f"Simplified log: {log.event_count} -> {current_log.event_count} events "
        f"with {len(folded)} folds"
    )
    return current_log, current_net, folded


def build_manifest(original: EventLog, simplified: EventLog, folded: list[FoldedActivity]) -> FoldManifest:
    manifest = FoldManifest(events_before=original.event_count, events_after=simplified.event_count)
    for record in folded:
        manifest.record(record)
    return manifest
