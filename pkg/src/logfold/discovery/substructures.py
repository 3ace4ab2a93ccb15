"""Detection of reducible Sequence, Or and SelfLoop substructures in a net."""

from typing import Iterable, Optional

from logfold.models.gspn import FoldCandidate, FoldKind, Gspn, Transition
from logfold.utils.logging import get_logger

logger = get_logger(__name__)


class SubstructureDetector:
    """
    Structural pattern matcher over a Gspn.

    A transition is *foldable* when it is visible, not protected, and has
    exactly one input and one output place. Sequence chains link foldable
    transitions through places with a single producer and a single consumer;
    self-looping transitions never join a chain.
    """

    def __init__(self, net: Gspn, protected: Iterable[str] = ()) -> None:
        self.net = net
        self.protected = frozenset(protected)

    def is_foldable(self, transition: Transition) -> bool:
        if not transition.visible or transition.label in self.protected:
            return False
        return len(self.net.preset(transition.id)) == 1 and len(self.net.postset(transition.id)) == 1

    def _chain_successor(self, transition: Transition) -> Optional[Transition]:
        (place,) = self.net.postset(transition.id)
        producers = self.net.preset(place)
        consumers = self.net.postset(place)
        if len(producers) != 1 or len(consumers) != 1:
            return None
        successor = self.net.transition(consumers[0])
        if not self.is_foldable(successor) or successor.label in self.net.self_loops:
            return None
        return successor

    def sequences(self) -> list[FoldCandidate]:
        chainable = [
            t for t in self.net.transitions if self.is_foldable(t) and t.label not in self.net.self_loops
        ]
        successor = {t.id: self._chain_successor(t) for t in chainable}
        has_predecessor = {s.id for s in successor.values() if s is not None}

        candidates = []
        for head in chainable:
            if head.id in has_predecessor:
                continue
            chain = [head]
            seen = {head.id}
            nxt = successor[head.id]
            while nxt is not None and nxt.id not in seen:
                chain.append(nxt)
                seen.add(nxt.id)
                nxt = successor.get(nxt.id)
            if len(chain) >= 2:
                candidates.append(
                    FoldCandidate.build(
                        FoldKind.SEQUENCE,
                        [t.label for t in chain if t.label is not None],
                        entry=self.net.preset(chain[0].id)[0],
                        exit=self.net.postset(chain[-1].id)[0],
                    )
                )
        return candidates

    def ors(self) -> list[FoldCandidate]:
        groups: dict[tuple[str, str], list[str]] = {}
        for t in self.net.transitions:
            if self.is_foldable(t) and t.label is not None:
                key = (self.net.preset(t.id)[0], self.net.postset(t.id)[0])
                groups.setdefault(key, []).append(t.label)
        return [
            FoldCandidate.build(FoldKind.OR, sorted(labels), entry=entry, exit=exit_place)
            for (entry, exit_place), labels in groups.items()
            if len(set(labels)) >= 2
        ]

    def self_loops(self) -> list[FoldCandidate]:
        candidates = []
        for label in sorted(self.net.self_loops - self.protected):
            for t in self.net.transitions_labelled(label):
                inputs, outputs = self.net.preset(t.id), self.net.postset(t.id)
                candidates.append(
                    FoldCandidate.build(
                        FoldKind.SELF_LOOP,
                        [label],
                        entry=inputs[0] if inputs else t.id,
                        exit=outputs[0] if outputs else t.id,
                    )
                )
                break
        return candidates

    def detect(self) -> list[FoldCandidate]:
        """All maximal candidates, made mutually disjoint greedily (largest first)."""
        found = self.sequences() + self.ors() + self.self_loops()
        found.sort(key=lambda c: (-c.activity_count, c.entry, c.name))

        taken: set[str] = set()
        selected = []
        for candidate in found:
            members = set(candidate.member_activities)
            if members & taken:
                logger.debug(f"Dropping overlapping candidate {candidate.name}")
                continue
            taken |= members
            selected.append(candidate)

        selected.sort(key=lambda c: (c.entry, c.name))
        logger.info(
            f"Detected {len(selected)} fold candidates "
            f"({', '.join(c.name for c in selected) or 'none'})"
        )
        return selected


def detect_substructures(net: Gspn, protected: Iterable[str] = ()) -> list[FoldCandidate]:
    """Detect disjoint fold candidates avoiding ``protected`` activities."""
    return SubstructureDetector(net, protected).detect()
