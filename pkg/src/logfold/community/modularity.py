"""Modularity and modularity gain over a weighted social network."""

from typing import Iterable

import networkx as nx
import numpy as np

from logfold.models.network import Partition, SocialNetwork
from logfold.utils.exceptions import DegenerateNetworkError, InvalidArgumentError


class ModularityEvaluator:
    """
    Evaluates Q for many partitions of one network.

    Q = 1/(2m) * sum over ordered pairs i != j in the same community of
    (W_ij - k_i k_j / 2m). Pairs i == j are excluded, so the all-singletons
    partition scores exactly 0.
    """

    def __init__(self, net: SocialNetwork) -> None:
        self.m = net.total_weight
        if self.m <= 0:
            raise DegenerateNetworkError("Modularity is undefined for a network without edge weight")
        self.nodes = net.nodes
        self.index = {node: i for i, node in enumerate(self.nodes)}
        weights = nx.to_numpy_array(net.graph, nodelist=self.nodes, weight="weight")
        degrees = weights.sum(axis=1)
        contribution = weights - np.outer(degrees, degrees) / (2 * self.m)
        np.fill_diagonal(contribution, 0.0)
        self._contribution = contribution

    def labels(self, part: Partition) -> np.ndarray:
        if set(part.assignment) != set(self.nodes):
            missing = sorted(set(self.nodes) - set(part.assignment))
            extra = sorted(set(part.assignment) - set(self.nodes))
            raise InvalidArgumentError(
                f"Partition does not cover the network nodes (missing {missing}, unknown {extra})"
            )
        ids: dict[str, int] = {}
        return np.array([ids.setdefault(part.assignment[n], len(ids)) for n in self.nodes])

    def __call__(self, part: Partition) -> float:
        labels = self.labels(part)
        same = labels[:, None] == labels[None, :]
        return float(self._contribution[same].sum() / (2 * self.m))


def modularity(net: SocialNetwork, part: Partition) -> float:
    """
    Modularity Q of ``part`` on ``net``.

    Raises:
        DegenerateNetworkError: If the network has no edge weight (m = 0)
        InvalidArgumentError: If the partition does not cover exactly the network nodes
    """
    return ModularityEvaluator(net)(part)


def _check_move(net: SocialNetwork, part: Partition, node: str, target: str) -> None:
    if node not in part.assignment:
        raise InvalidArgumentError(f"Node '{node}' is not in the partition")
    if target not in part.communities:
        raise InvalidArgumentError(f"Community '{target}' does not exist")
    if part.community_of(node) == target:
        raise InvalidArgumentError(f"Node '{node}' is already in community '{target}'")
    if net.total_weight <= 0:
        raise DegenerateNetworkError("Modularity gain is undefined for a network without edge weight")


def boundary_weight(net: SocialNetwork, members: set[str]) -> float:
    """Total weight of edges from ``members`` to nodes outside it."""
    return sum(w for a, b, w in net.edges if (a in members) != (b in members))


def internal_weight(net: SocialNetwork, members: set[str]) -> float:
    """Total weight of edges with both endpoints in ``members``."""
    return sum(w for a, b, w in net.edges if a in members and b in members)


def group_gain(net: SocialNetwork, group: Iterable[str], target_members: set[str]) -> float:
    """
    Closed-form gain of moving ``group`` (one node, or a merged super-node
    whose degree is the sum of its members' degrees) into ``target_members``.
    """
    group = list(group)
    m = net.total_weight
    k_i = sum(net.degree(n) for n in group)
    k_i_y = sum(net.weight(n, t) for n in group for t in target_members)
    return k_i_y / (2 * m) - boundary_weight(net, target_members) * k_i / (2 * m**2)


def modularity_gain(net: SocialNetwork, part: Partition, node: str, target: str) -> float:
    """
    Gain of moving ``node`` into community ``target``:
    k_i^y / 2m - (boundary weight of target) * k_i / 2m^2.

    Raises:
        InvalidArgumentError: If ``node`` is already in ``target`` or ``target`` does not exist
    """
    _check_move(net, part, node, target)
    return group_gain(net, [node], part.members(target))


def modularity_gain_full(net: SocialNetwork, part: Partition, node: str, target: str) -> float:
    """
    Gain of moving ``node`` into ``target``, from the expanded before/after form
    (community internal weight over ordered pairs, boundary weight, k_i and k_i^y).
    Algebraically equal to :func:`modularity_gain`.
    """
    _check_move(net, part, node, target)
    members = part.members(target)
    two_m = 2 * net.total_weight
    sigma_in = 2 * internal_weight(net, members)
    sigma_b = boundary_weight(net, members)
    k_i = net.degree(node)
    k_i_y = sum(net.weight(node, t) for t in members)
    after = (sigma_in + k_i_y) / two_m - ((sigma_b + k_i) / two_m) ** 2
    before = sigma_in / two_m - (sigma_b / two_m) ** 2 - (k_i / two_m) ** 2
    return after - before
