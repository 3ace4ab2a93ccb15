"""JSON persistence for resource community networks."""

import json
from pathlib import Path

from pydantic import ValidationError as PydanticValidationError

from logfold.models.network import ResourceCommunityNetwork
from logfold.utils.atomic import atomic_write_text
from logfold.utils.exceptions import ModelFormatError


def save_community_network(rcn: ResourceCommunityNetwork, path: str | Path) -> Path:
    """Write communities (members, loop weights), inter-community weights and the move history."""
    path = Path(path)
    atomic_write_text(path, json.dumps(rcn.model_dump(mode="json"), indent=2) + "\n")
    return path


def load_community_network(path: str | Path) -> ResourceCommunityNetwork:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Community network file not found: {path}")
    try:
        return ResourceCommunityNetwork.model_validate_json(path.read_text(encoding="utf-8"))
    except PydanticValidationError as e:
        raise ModelFormatError(f"Invalid community network file {path}: {e}") from e
