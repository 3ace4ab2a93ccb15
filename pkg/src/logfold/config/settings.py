"""Configuration management for logfold."""

from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class InputConfig(BaseModel):
    """Input log configuration: a CSV file, or the synthetic generator when no path is given."""

    path: Optional[str] = Field(
        None,
        description="Path to the event log CSV; None runs the synthetic generator",
    )
    column_map: dict[str, str] = Field(
        default_factory=dict,
        description="Logical field (case_id, activity, resource, timestamp) -> CSV header",
    )
    timestamp_format: str = Field(
        default="iso",
        description="'iso', 'epoch' or a strftime pattern",
    )
    infrequent_threshold: int = Field(
        default=0,
        ge=0,
        description="Activities seen fewer times are grouped under 'other' (0 disables)",
    )
    net_path: Optional[str] = Field(
        None,
        description="Hand-built net (JSON) to use instead of running the alpha miner",
    )
    social_network_path: Optional[str] = Field(
        None,
        description="Edge-list file to use instead of deriving handovers from the log",
    )
    synthetic_cases: int = Field(default=1000, ge=1, description="Cases for the synthetic generator")
    noise_activity: Optional[str] = Field(
        None,
        description="Inject this activity with target-independent duration into synthetic logs",
    )

    @field_validator("column_map")
    @classmethod
    def validate_column_map(cls, v: dict[str, str]) -> dict[str, str]:
        allowed = {"case_id", "activity", "resource", "timestamp", "start_timestamp"}
        unknown = set(v) - allowed
        if unknown:
            raise ValueError(f"Unknown column_map keys: {sorted(unknown)}. Allowed: {sorted(allowed)}")
        return v


class SplitConfig(BaseModel):
    """Temporal train/test split configuration."""

    fraction: float = Field(default=0.8, gt=0, lt=1, description="Share of traces used for training")


class PredictorConfig(BaseModel):
    """Remaining-time predictor configuration."""

    prefix_len: int = Field(default=8, ge=1, description="Events kept per encoded prefix")
    k: int = Field(default=3, ge=1, description="Number of k-means buckets")
    seed: int = Field(default=42, description="Random seed for bucketing and regressors")
    regressor: str = Field(default="stumps", description="Regressor name: 'stumps' or 'xgboost'")
    n_rounds: int = Field(default=100, ge=1, description="Boosting rounds")
    learning_rate: float = Field(default=0.1, gt=0, le=1, description="Boosting shrinkage")
    min_samples_leaf: int = Field(
        default=20,
        ge=1,
        description="Fewest samples on either side of a stump split",
    )
    min_bucket_size: int = Field(
        default=5,
        ge=1,
        description="Buckets with fewer samples predict the global mean",
    )
    kmeans_max_iter: int = Field(default=100, ge=1)

    @field_validator("regressor")
    @classmethod
    def validate_regressor(cls, v: str) -> str:
        if v not in ("stumps", "xgboost"):
            raise ValueError(f"Invalid regressor: {v}. Must be 'stumps' or 'xgboost'")
        return v


class BudgetConfig(BaseModel):
    """Deviation budget g * Gamma for the fold selection."""

    gamma_mode: Literal["original_mae", "fixed", "relative"] = Field(
        default="original_mae",
        description="How Gamma is derived: original model MAE, a fixed value, or a multiple of the MAE",
    )
    gamma_value: Optional[float] = Field(
        None,
        ge=0,
        description="Gamma in seconds (fixed) or multiplier (relative)",
    )
    g: float = Field(default=1.0, ge=0, description="Slack multiplier")

    @model_validator(mode="after")
    def check_gamma_value(self) -> "BudgetConfig":
        if self.gamma_mode in ("fixed", "relative") and self.gamma_value is None:
            raise ValueError(f"gamma_value is required when gamma_mode is '{self.gamma_mode}'")
        return self


class PointsConfig(BaseModel):
    """Prediction point selection."""

    override: list[str] = Field(
        default_factory=list,
        description="User-chosen prediction points; replaces community-based selection",
    )
    multiplicity: int = Field(default=1, ge=1, description="Points chosen per community")
    aggregation: str = Field(
        default="worst",
        description="'worst' takes the largest deviation over points; otherwise a point label",
    )


class BaselineConfig(BaseModel):
    """Comparative filter baselines."""

    enabled: bool = Field(default=False, description="Run the baseline comparison")
    attribute_activity: Optional[str] = Field(
        None,
        description="Activity whose events the attribute filter drops",
    )
    attribute_fraction: float = Field(default=1.0, ge=0, le=1)
    attribute_name: str = Field(
        default="value",
        description="Event attribute holding the lab value; cases whose values are all normal are dropped",
    )
    normal_upper: float = Field(default=10.0, gt=0, description="Upper bound of a normal value")
    starts: list[str] = Field(default_factory=list, description="Allowed first activities")
    ends: list[str] = Field(default_factory=list, description="Allowed last activities")


class OutputConfig(BaseModel):
    """Output configuration."""

    directory: str = Field(default="./output", description="Output directory path")
    report_file: str = Field(default="report.md")
    assessments_file: str = Field(default="assessments.csv")
    summary_file: str = Field(default="summary.csv")
    points_mae_file: str = Field(default="points_mae.csv")
    manifest_file: str = Field(default="fold_manifest.json")
    simplified_log_file: str = Field(default="simplified_log.csv")
    gspn_file: str = Field(default="gspn.json")
    simplified_gspn_file: str = Field(default="simplified_gspn.json")
    communities_file: str = Field(default="communities.json")


class ProcessingConfig(BaseModel):
    """Processing configuration."""

    workers: int = Field(default=1, ge=1, description="Threads used for candidate assessment")
    overwrite_or_delay: bool = Field(
        default=False,
        description="Or folds overwrite member durations with the pooled mean",
    )


class AppConfig(BaseSettings):
    """
    Main application configuration.

    Supports configuration from multiple sources with priority:
    1. Command-line arguments (highest)
    2. Configuration file (YAML)
    3. Environment variables (LOGFOLD_ prefix, ``__`` between nested keys)
    4. Default values (lowest)
    """

    model_config = SettingsConfigDict(
        env_prefix="LOGFOLD_",
        env_nested_delimiter="__",
        extra="ignore",
    )

    input: InputConfig = Field(default_factory=InputConfig)
    split: SplitConfig = Field(default_factory=SplitConfig)
    predictor: PredictorConfig = Field(default_factory=PredictorConfig)
    budget: BudgetConfig = Field(default_factory=BudgetConfig)
    points: PointsConfig = Field(default_factory=PointsConfig)
    baselines: BaselineConfig = Field(default_factory=BaselineConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    processing: ProcessingConfig = Field(default_factory=ProcessingConfig)

    @property
    def seed(self) -> int:
        return self.predictor.seed

    @classmethod
    def from_yaml(cls, config_path: Path | str) -> "AppConfig":
        """
        Load configuration from YAML file.

        Raises:
            FileNotFoundError: If config file doesn't exist
            ValueError: If config file is invalid
        """
        config_path = Path(config_path)
        if not config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")

        with open(config_path, "r", encoding="utf-8") as f:
            try:
                data = yaml.safe_load(f)
            except yaml.YAMLError as e:
                raise ValueError(f"Invalid YAML in configuration file: {e}") from e

        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ValueError(f"Configuration file must hold a mapping, got {type(data).__name__}")
        return cls(**data)

    @classmethod
    def from_dict(cls, data: dict) -> "AppConfig":
        return cls(**data)

    def merge_with_cli_args(
        self,
        input_path: Optional[str] = None,
        output_dir: Optional[str] = None,
        seed: Optional[int] = None,
        budget_gamma: Optional[float] = None,
        budget_g: Optional[float] = None,
        points: Optional[list[str]] = None,
        net_path: Optional[str] = None,
        baselines: Optional[bool] = None,
        workers: Optional[int] = None,
    ) -> "AppConfig":
        """
        Merge CLI arguments into configuration (CLI args override config).

        ``budget_gamma`` switches Gamma to a fixed value in seconds.
        """
        config_dict = self.model_dump()

        if input_path:
            config_dict["input"]["path"] = input_path
        if output_dir:
            config_dict["output"]["directory"] = output_dir
        if seed is not None:
            config_dict["predictor"]["seed"] = seed
        if budget_gamma is not None:
            config_dict["budget"]["gamma_mode"] = "fixed"
            config_dict["budget"]["gamma_value"] = budget_gamma
        if budget_g is not None:
            config_dict["budget"]["g"] = budget_g
        if points:
            config_dict["points"]["override"] = list(points)
        if net_path:
            config_dict["input"]["net_path"] = net_path
        if baselines is not None:
            config_dict["baselines"]["enabled"] = baselines
        if workers is not None:
            config_dict["processing"]["workers"] = workers

        return AppConfig(**config_dict)

    def validate_paths(self) -> tuple[bool, list[str]]:
        """
        Validate that all configured input paths exist and the output directory is usable.

        Returns:
            Tuple of (is_valid, errors)
        """
        errors: list[str] = []

        for label, value in (
            ("Event log", self.input.path),
            ("Net model", self.input.net_path),
            ("Social network", self.input.social_network_path),
        ):
            if value and not Path(value).exists():
                errors.append(f"{label} file not found: {value}")

        output_path = Path(self.output.directory)
        if not output_path.exists():
            try:
                output_path.mkdir(parents=True, exist_ok=True)
            except OSError as e:
                errors.append(f"Cannot create output directory: {e}")

        return len(errors) == 0, errors


RunConfig = AppConfig
