"""Resource social networks."""

from logfold.socialnet.builder import build_social_network, handover_counts
from logfold.socialnet.edgelist import load_social_network, save_social_network

__all__ = [
    "build_social_network",
    "handover_counts",
    "load_social_network",
    "save_social_network",
]
