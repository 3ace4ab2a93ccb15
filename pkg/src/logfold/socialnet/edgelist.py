"""Edge-list persistence for social networks (``node_a,node_b,weight`` per line)."""

import math
from pathlib import Path

import pandas as pd

from logfold.models.network import SocialNetwork
from logfold.utils.atomic import atomic_write_text
from logfold.utils.exceptions import ModelFormatError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)


def load_social_network(path: str | Path) -> SocialNetwork:
    """
    Load a network holding exactly the listed edges.

    Blank lines and lines starting with ``#`` are skipped. Node order is the
    order of first appearance in the file.

    Raises:
        FileNotFoundError: If the file does not exist
        ModelFormatError: On malformed lines, non-positive weights, self-edges
            or duplicate edges
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Edge list not found: {path}")

    try:
        df = pd.read_csv(
            path,
            header=None,
            names=["a", "b", "weight"],
            dtype=str,
            comment="#",
            skip_blank_lines=True,
            keep_default_na=False,
            skipinitialspace=True,
            index_col=False,
            encoding="utf-8",
        ).fillna("")
    except pd.errors.EmptyDataError:
        logger.info(f"Edge list {path} is empty")
        return SocialNetwork.from_edges([])
    except pd.errors.ParserError as e:
        raise ModelFormatError(f"Malformed edge list {path}: {e}") from e

    edges: list[tuple[str, str, float]] = []
    seen: set[frozenset[str]] = set()
    for row in df.itertuples(index=False):
        a, b, raw = row.a.strip(), row.b.strip(), row.weight.strip()
        if not a or not b or not raw:
            raise ModelFormatError(f"Edge list {path}: expected 'node_a,node_b,weight', got {tuple(row)}")
        try:
            weight = float(raw)
        except ValueError as e:
            raise ModelFormatError(f"Edge list {path}: weight '{raw}' is not a number") from e
        if not math.isfinite(weight) or weight <= 0:
            raise ModelFormatError(f"Edge list {path}: edge {a}-{b} has non-positive weight {raw}")
        if a == b:
            raise ModelFormatError(f"Edge list {path}: self-edge on '{a}'")
        key = frozenset((a, b))
        if key in seen:
            raise ModelFormatError(f"Edge list {path}: duplicate edge {a}-{b}")
        seen.add(key)
        edges.append((a, b, weight))

    network = SocialNetwork.from_edges(edges)
    logger.info(f"Loaded social network from {path}: {len(network)} performers, {len(edges)} edges")
    return network


def save_social_network(network: SocialNetwork, path: str | Path) -> Path:
    """Write the edge list atomically."""
    path = Path(path)
    lines = [f"{a},{b},{w!r}" for a, b, w in network.edges]
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))
    return path
