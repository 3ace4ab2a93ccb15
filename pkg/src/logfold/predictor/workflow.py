"""Train-on-train, score-on-test evaluation at one prediction point."""

from dataclasses import dataclass
from typing import Optional

from logfold.config.settings import PredictorConfig
from logfold.models.eventlog import EventLog
from logfold.predictor.encoding import ActivityEncoder, extract_prefixes
from logfold.predictor.model import PredictionModel, evaluate, train


@dataclass(frozen=True)
class PointEvaluation:
    """MAE of a model trained on one log and scored on another, at one point."""

    point: str
    mae: float
    train_samples: int
    test_samples: int
    model: PredictionModel


def evaluate_point(
    train_log: EventLog,
    test_log: EventLog,
    point: str,
    config: Optional[PredictorConfig] = None,
) -> PointEvaluation:
    """
    Raises:
        EmptySampleError: If the point occurs in no training or no test trace
        PredictorConfigError: If the training samples cannot fill k buckets
    """
    config = config or PredictorConfig()
    encoder = ActivityEncoder.from_log(train_log)
    train_samples = extract_prefixes(train_log, point, config.prefix_len, encoder)
    test_samples = extract_prefixes(test_log, point, config.prefix_len, encoder)
    model = train(train_samples, config, encoder)
    score, _ = evaluate(model, test_samples)
    return PointEvaluation(
        point=point,
        mae=score,
        train_samples=len(train_samples),
        test_samples=len(test_samples),
        model=model,
    )
