"""Social network, partition and resource community network models."""

from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator


@dataclass(frozen=True)
class SocialNetwork:
    """
    Weighted undirected performer graph G = (P, R, W).

    Node order is the order performers were added (input order); community
    detection traverses nodes in this order.
    """

    graph: nx.Graph

    def __post_init__(self) -> None:
        for a, b, w in self.graph.edges(data="weight"):
            if a == b:
                raise ValueError(f"Self-edge on '{a}' is not allowed in a social network")
            if w is None or w <= 0:
                raise ValueError(f"Edge {a}-{b} must have a positive weight, got {w}")

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[str, str, float]], nodes: Iterable[str] = ()
    ) -> "SocialNetwork":
        graph = nx.Graph()
        graph.add_nodes_from(nodes)
        for a, b, w in edges:
            graph.add_edge(a, b, weight=float(w))
        return cls(graph=graph)

    @property
    def nodes(self) -> list[str]:
        return list(self.graph.nodes)

    @property
    def edges(self) -> list[tuple[str, str, float]]:
        return [(a, b, float(w)) for a, b, w in self.graph.edges(data="weight")]

    def weight(self, a: str, b: str) -> float:
        data = self.graph.get_edge_data(a, b)
        return float(data["weight"]) if data else 0.0

    def degree(self, node: str) -> float:
        """k_i: total weight of the edges incident to ``node``."""
        return float(self.graph.degree(node, weight="weight"))

    @property
    def total_weight(self) -> float:
        """m: total edge weight."""
        return float(self.graph.size(weight="weight"))

    def neighbors(self, node: str) -> list[str]:
        return list(self.graph.neighbors(node))

    def __len__(self) -> int:
        return self.graph.number_of_nodes()


@dataclass
class Partition:
    """Assignment of every node to exactly one non-empty community."""

    assignment: dict[str, str] = field(default_factory=dict)

    @classmethod
    def singletons(cls, nodes: Iterable[str]) -> "Partition":
        return cls(assignment={node: node for node in nodes})

    @classmethod
    def from_communities(cls, communities: Iterable[Iterable[str]]) -> "Partition":
        assignment: dict[str, str] = {}
        for index, members in enumerate(communities):
            for node in members:
                if node in assignment:
                    raise ValueError(f"Node '{node}' assigned to more than one community")
                assignment[node] = f"C{index + 1}"
        return cls(assignment=assignment)

    @property
    def communities(self) -> dict[str, set[str]]:
        grouped: dict[str, set[str]] = {}
        for node, community in self.assignment.items():
            grouped.setdefault(community, set()).add(node)
        return grouped

    def community_of(self, node: str) -> str:
        return self.assignment[node]

    def members(self, community: str) -> set[str]:
        return {n for n, c in self.assignment.items() if c == community}

    def moved(self, nodes: Iterable[str], target: str) -> "Partition":
        """Copy of the partition with ``nodes`` reassigned to ``target``."""
        assignment = dict(self.assignment)
        for node in nodes:
            assignment[node] = target
        return Partition(assignment=assignment)


class Community(BaseModel):
    """One community C of the resource community network, with its loop edge weight."""

    model_config = ConfigDict(frozen=True)

    id: str
    members: tuple[str, ...] = Field(..., min_length=1)
    loop_weight: float = Field(default=0.0, ge=0)


class CommunityMove(BaseModel):
    """An accepted move of a node (or merged super-node) between communities."""

    model_config = ConfigDict(frozen=True)

    level: int
    members: tuple[str, ...]
    source: str
    target: str
    gain: float
    q_before: float
    q_after: float


class ResourceCommunityNetwork(BaseModel):
    """
    Resource community network S = (C', R', W').

    ``weights`` maps ``"Ci|Cj"`` (ids in community order) to the summed weight
    of the original edges between the two communities.
    """

    model_config = ConfigDict(frozen=True)

    communities: tuple[Community, ...]
    weights: dict[str, float] = Field(default_factory=dict)
    modularity: float = 0.0
    history: tuple[CommunityMove, ...] = ()

    @model_validator(mode="after")
    def check_disjoint(self) -> "ResourceCommunityNetwork":
        seen: set[str] = set()
        for community in self.communities:
            overlap = seen & set(community.members)
            if overlap:
                raise ValueError(f"Performers in more than one community: {sorted(overlap)}")
            seen.update(community.members)
        return self

    @staticmethod
    def edge_key(a: str, b: str) -> str:
        return f"{a}|{b}"

    def inter_weight(self, a: str, b: str) -> float:
        return self.weights.get(self.edge_key(a, b), self.weights.get(self.edge_key(b, a), 0.0))

    @property
    def member_sets(self) -> list[set[str]]:
        return [set(c.members) for c in self.communities]

    def partition(self) -> Partition:
        return Partition(
            assignment={m: c.id for c in self.communities for m in c.members}
        )
