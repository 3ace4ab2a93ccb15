"""Multi-level modularity clustering of performers into resource communities."""

from logfold.community.modularity import ModularityEvaluator, group_gain, internal_weight
from logfold.models.network import (
    Community,
    CommunityMove,
    Partition,
    ResourceCommunityNetwork,
    SocialNetwork,
)
from logfold.utils.exceptions import DegenerateNetworkError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)

# Q must rise by more than this for a move to count
MIN_IMPROVEMENT = 1e-12


class LouvainClustering:
    """
    Greedy modularity clustering.

    Units (single performers, later merged communities acting as super-nodes)
    are visited in network node order. A unit considers the communities of
    its neighbours, picks the one with the largest closed-form gain (ties go
    to the community met first) and moves there when the recomputed
    modularity strictly increases. When a level finishes with moves,
    communities become the units of the next level; the run stops when a
    level makes no move.
    """

    def __init__(self, net: SocialNetwork) -> None:
        if net.total_weight <= 0:
            raise DegenerateNetworkError(
                "Community detection needs a network with positive total edge weight"
            )
        self.net = net
        self.order = {node: i for i, node in enumerate(net.nodes)}
        self.evaluate = ModularityEvaluator(net)
        self.history: list[CommunityMove] = []

    def _neighbour_communities(self, part: Partition, unit: list[str]) -> list[str]:
        own = part.community_of(unit[0])
        found: list[str] = []
        neighbours = sorted(
            {nb for node in unit for nb in self.net.neighbors(node)}, key=self.order.__getitem__
        )
        for nb in neighbours:
            community = part.community_of(nb)
            if community != own and community not in found:
                found.append(community)
        return found

    def _run_level(self, level: int, units: list[list[str]], part: Partition, q: float) -> tuple[Partition, float, bool]:
        moved_any = False
        improved = True
        while improved:
            improved = False
            for unit in units:
                targets = self._neighbour_communities(part, unit)
                if not targets:
                    continue
                communities = part.communities
                gains = [(group_gain(self.net, unit, communities[t]), t) for t in targets]
                best_gain, best = max(gains, key=lambda g: g[0])  # first max wins
                candidate = part.moved(unit, best)
                q_new = self.evaluate(candidate)
                if q_new > q + MIN_IMPROVEMENT:
                    source = part.community_of(unit[0])
                    self.history.append(
                        CommunityMove(
                            level=level,
                            members=tuple(unit),
                            source=source,
                            target=best,
                            gain=best_gain,
                            q_before=q,
                            q_after=q_new,
                        )
                    )
                    logger.debug(
                        f"Level {level}: moved {'+'.join(unit)} {source} -> {best} "
                        f"(gain {best_gain:.4f}, Q {q:.4f} -> {q_new:.4f})"
                    )
                    part, q = candidate, q_new
                    improved = moved_any = True
        return part, q, moved_any

    def _units(self, part: Partition) -> list[list[str]]:
        groups = [sorted(members, key=self.order.__getitem__) for members in part.communities.values()]
        return sorted(groups, key=lambda g: self.order[g[0]])

    def run(self) -> ResourceCommunityNetwork:
        part = Partition.singletons(self.net.nodes)
        q = self.evaluate(part)
        units = [[node] for node in self.net.nodes]
        level = 0
        while True:
            part, q, moved = self._run_level(level, units, part, q)
            if not moved:
                break
            units = self._units(part)
            level += 1
            if len(units) == 1:
                break
        return self._build_network(part, q)

    def _build_network(self, part: Partition, q: float) -> ResourceCommunityNetwork:
        groups = self._units(part)
        communities = []
        membership: dict[str, str] = {}
        for index, members in enumerate(groups):
            community_id = f"C{index + 1}"
            communities.append(
                Community(
                    id=community_id,
                    members=tuple(members),
                    loop_weight=internal_weight(self.net, set(members)),
                )
            )
            membership.update({m: community_id for m in members})

        weights: dict[str, float] = {}
        for a, b, w in self.net.edges:
            ca, cb = membership[a], membership[b]
            if ca == cb:
                continue
            first, second = sorted((ca, cb), key=lambda c: int(c[1:]))
            key = ResourceCommunityNetwork.edge_key(first, second)
            weights[key] = weights.get(key, 0.0) + w

        network = ResourceCommunityNetwork(
            communities=tuple(communities),
            weights=dict(sorted(weights.items())),
            modularity=q,
            history=tuple(self.history),
        )
        logger.info(
            f"Found {len(communities)} resource communities (Q = {q:.4f}, "
            f"{len(self.history)} moves): "
            + "; ".join("{" + ", ".join(c.members) + "}" for c in communities)
        )
        return network


def louvain(net: SocialNetwork) -> ResourceCommunityNetwork:
    """
    Cluster performers into a resource community network.

    Raises:
        DegenerateNetworkError: If the network has no edge weight
    """
    return LouvainClustering(net).run()
