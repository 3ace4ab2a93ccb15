"""Comparison rows shared by the experiment harness and the report writers."""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

ORIGINAL = "original"
PROPOSED = "proposed"
ATTRIBUTE_FILTER = "attribute_filter"
ENDPOINT_FILTER = "endpoint_filter"


class MethodScore(BaseModel):
    """Prediction quality and data volume of one log-reduction method at one point."""

    model_config = ConfigDict(frozen=True)

    method: str
    point: str
    mae: Optional[float] = Field(None, description="None when the point has no samples after the method")
    deviation: Optional[float] = Field(None, description="|MAE - original MAE|")
    events: int = Field(..., ge=0)
    reduction_pct: float
