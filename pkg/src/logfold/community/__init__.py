"""Resource community detection by modularity optimisation."""

from logfold.community.louvain import LouvainClustering, louvain
from logfold.community.modularity import (
    ModularityEvaluator,
    boundary_weight,
    group_gain,
    internal_weight,
    modularity,
    modularity_gain,
    modularity_gain_full,
)
from logfold.community.network_io import load_community_network, save_community_network

__all__ = [
    "louvain",
    "LouvainClustering",
    "modularity",
    "modularity_gain",
    "modularity_gain_full",
    "group_gain",
    "boundary_weight",
    "internal_weight",
    "ModularityEvaluator",
    "save_community_network",
    "load_community_network",
]
