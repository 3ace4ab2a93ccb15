"""Prediction point selection over resource communities."""

from logfold.predpoints.selection import (
    PredictionPointSet,
    community_activity_sets,
    select_prediction_points,
    validate_sdr,
)

__all__ = [
    "PredictionPointSet",
    "community_activity_sets",
    "select_prediction_points",
    "validate_sdr",
]
