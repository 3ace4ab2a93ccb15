"""JSON persistence and token-game replay for Gspn models."""

import json
from collections import Counter
from pathlib import Path
from typing import Any, Iterable

from pydantic import ValidationError as PydanticValidationError

from logfold.models.gspn import Gspn
from logfold.utils.atomic import atomic_write_text
from logfold.utils.exceptions import ModelFormatError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)


def gspn_to_dict(net: Gspn) -> dict[str, Any]:
    return {
        "places": list(net.places),
        "transitions": [
            {"id": t.id, "label": t.label, "visible": t.visible} for t in net.transitions
        ],
        "arcs": [{"source": a.source, "target": a.target, "weight": a.weight} for a in net.arcs],
        "initial_place": net.initial_place,
        "final_place": net.final_place,
        "self_loops": sorted(net.self_loops),
    }


def gspn_from_dict(data: Any) -> Gspn:
    """
    Build a Gspn from its JSON structure.

    Raises:
        ModelFormatError: If the structure is malformed or inconsistent
    """
    if not isinstance(data, dict):
        raise ModelFormatError(f"Net definition must be an object, got {type(data).__name__}")
    for key in ("places", "transitions", "arcs"):
        if key not in data:
            raise ModelFormatError(f"Net definition is missing '{key}'")

    transitions = []
    for item in data["transitions"]:
        if not isinstance(item, dict) or "id" not in item:
            raise ModelFormatError(f"Malformed transition entry: {item!r}")
        label = item.get("label")
        visible = item.get("visible", label is not None)
        if visible != (label is not None):
            raise ModelFormatError(
                f"Transition '{item['id']}' is marked visible={visible} but has label {label!r}"
            )
        transitions.append({"id": item["id"], "label": label})

    try:
        return Gspn(
            places=tuple(data["places"]),
            transitions=tuple(transitions),
            arcs=tuple(data["arcs"]),
            initial_place=data.get("initial_place"),
            final_place=data.get("final_place"),
            self_loops=frozenset(data.get("self_loops", ())),
        )
    except PydanticValidationError as e:
        raise ModelFormatError(f"Invalid net definition: {e}") from e


def save_gspn(net: Gspn, path: str | Path) -> Path:
    """Write ``net`` as JSON (atomically)."""
    path = Path(path)
    atomic_write_text(path, json.dumps(gspn_to_dict(net), indent=2) + "\n")
    logger.debug(f"Saved net to {path}")
    return path


def load_gspn(path: str | Path) -> Gspn:
    """
    Load a net from JSON, e.g. a hand-built model replacing discovery.

    Raises:
        FileNotFoundError: If the file does not exist
        ModelFormatError: If the file is not a valid net definition
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Net file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"Invalid JSON in net file {path}: {e}") from e
    net = gspn_from_dict(data)
    logger.info(f"Loaded net from {path}: {len(net.transitions)} transitions")
    return net


def replay(net: Gspn, labels: Iterable[str]) -> bool:
    """
    Token-game replay of an activity sequence on visible transitions.

    Direct repeats of a self-looping activity are consumed without firing.
    Succeeds when every step is enabled and the run ends with one token on
    the final place.
    """
    if net.initial_place is None or net.final_place is None:
        return False
    marking: Counter[str] = Counter({net.initial_place: 1})
    previous = None
    for label in labels:
        if label == previous and label in net.self_loops:
            continue
        previous = label
        fired = False
        for t in net.transitions_labelled(label):
            needed = {p: net.arc_weight(p, t.id) for p in net.preset(t.id)}
            if all(marking[p] >= w for p, w in needed.items()):
                for p, w in needed.items():
                    marking[p] -= w
                for p in net.postset(t.id):
                    marking[p] += net.arc_weight(t.id, p)
                fired = True
                break
        if not fired:
            return False
    remaining = +marking
    return remaining == Counter({net.final_place: 1})
