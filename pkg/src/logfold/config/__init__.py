"""Configuration management for logfold."""

from logfold.config.settings import (
    AppConfig,
    BaselineConfig,
    BudgetConfig,
    InputConfig,
    OutputConfig,
    PointsConfig,
    PredictorConfig,
    ProcessingConfig,
    RunConfig,
    SplitConfig,
)

__all__ = [
    "AppConfig",
    "BaselineConfig",
    "BudgetConfig",
    "InputConfig",
    "OutputConfig",
    "PointsConfig",
    "PredictorConfig",
    "ProcessingConfig",
    "RunConfig",
    "SplitConfig",
]
