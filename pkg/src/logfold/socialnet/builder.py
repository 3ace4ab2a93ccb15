"""Handover-of-work social network construction."""

from collections import Counter

from logfold.models.eventlog import UNKNOWN_RESOURCE, EventLog
from logfold.models.network import SocialNetwork
from logfold.utils.exceptions import DegenerateNetworkError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)


def handover_counts(log: EventLog) -> Counter[tuple[str, str]]:
    """
    Count handovers between performers of consecutive events.

    Pairs are unordered (stored sorted); events by the same performer and
    events with an unknown performer do not count.
    """
    counts: Counter[tuple[str, str]] = Counter()
    for trace in log.traces:
        for current, following in zip(trace.events, trace.events[1:]):
            a, b = current.resource, following.resource
            if a == b or UNKNOWN_RESOURCE in (a, b):
                continue
            counts[(a, b) if a < b else (b, a)] += 1
    return counts


def build_social_network(log: EventLog, normalize: bool = True) -> SocialNetwork:
    """
    Build the weighted undirected performer network from handovers of work.

    Nodes keep the order in which performers first appear in the log.

    Args:
        log: Event log
        normalize: Divide all weights by the largest so they fall in (0, 1]

    Raises:
        DegenerateNetworkError: If the log has fewer than 2 known performers
    """
    nodes: list[str] = []
    seen: set[str] = set()
    for trace in log.traces:
        for event in trace.events:
            if event.resource != UNKNOWN_RESOURCE and event.resource not in seen:
                seen.add(event.resource)
                nodes.append(event.resource)
    if len(nodes) < 2:
        raise DegenerateNetworkError(
            f"Social network needs at least 2 performers, found {len(nodes)}"
        )

    counts = handover_counts(log)
    # Edge order follows first-appearance order for reproducible traversal
    position = {node: i for i, node in enumerate(nodes)}
    pairs = sorted(counts, key=lambda pair: tuple(sorted((position[pair[0]], position[pair[1]]))))
    scale = max(counts.values()) if normalize and counts else 1
    edges = [(a, b, counts[(a, b)] / scale) for a, b in pairs]

    network = SocialNetwork.from_edges(edges, nodes=nodes)
    logger.info(
        f"Built social network: {len(network)} performers, {len(edges)} edges, "
        f"total weight {network.total_weight:.3f}"
    )
    return network
