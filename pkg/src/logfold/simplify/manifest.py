"""Fold records: which fresh activity replaced which members, with what effect."""

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from logfold.models.gspn import FoldKind
from logfold.utils.atomic import atomic_write_text

DELAY_RULES = {
    FoldKind.SEQUENCE: "sum",
    FoldKind.OR: "mean",
    FoldKind.SELF_LOOP: "repeat-sum",
}


class FoldedActivity(BaseModel):
    """A fresh activity t_alpha and the candidate it replaced."""

    model_config = ConfigDict(frozen=True)

    label: str
    kind: FoldKind
    replaced: tuple[str, ...] = Field(..., min_length=1)
    delay_rule: str
    pooled_delay: Optional[float] = Field(None, description="Or folds only: mean member delay, seconds")
    traces_touched: int = Field(default=0, ge=0)
    events_removed: int = Field(default=0, ge=0)


@dataclass
class FoldManifest:
    """
    Record of one simplification run.

    Tracks every applied fold plus the event volumes before and after, for
    export next to the simplified log.
    """

    folds: list[FoldedActivity] = field(default_factory=list)
    events_before: int = 0
    events_after: int = 0
    created_at: Optional[datetime] = None

    def record(self, folded: FoldedActivity) -> None:
        """Append a fold; labels are unique within one manifest."""
        if self.get_fold(folded.label) is not None:
            raise ValueError(f"Fold label '{folded.label}' already recorded")
        self.folds.append(folded)

    def get_fold(self, label: str) -> Optional[FoldedActivity]:
        for fold in self.folds:
            if fold.label == label:
                return fold
        return None

    def get_folds_by_kind(self, kind: FoldKind) -> list[FoldedActivity]:
        return [f for f in self.folds if f.kind == kind]

    @property
    def reduction(self) -> float:
        """Share of events removed, in [0, 1]."""
        if self.events_before == 0:
            return 0.0
        return 1.0 - self.events_after / self.events_before

    def get_statistics(self) -> dict[str, Any]:
        return {
            "folds": len(self.folds),
            "activities_folded": sum(len(f.replaced) for f in self.folds),
            "events_before": self.events_before,
            "events_after": self.events_after,
            "reduction": self.reduction,
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "created_at": self.created_at.isoformat() if self.created_at else None,
            "statistics": self.get_statistics(),
            "folds": [f.model_dump(mode="json") for f in self.folds],
        }

    def save(self, path: str | Path, timestamped: bool = False) -> Path:
        """
        Write the manifest as JSON.

        ``created_at`` is only stamped when ``timestamped`` is set, so that
        repeated runs produce identical files.
        """
        if timestamped and self.created_at is None:
            self.created_at = datetime.now(timezone.utc).replace(microsecond=0)
        return atomic_write_text(Path(path), json.dumps(self.to_dict(), indent=2) + "\n")
