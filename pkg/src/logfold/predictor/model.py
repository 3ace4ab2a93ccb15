"""Cluster-bucketed remaining-time prediction model."""

import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from logfold.config.settings import PredictorConfig
from logfold.predictor.encoding import ActivityEncoder, PrefixSample
from logfold.predictor.regressors import Regressor, make_regressor, regressor_from_dict
from logfold.utils.atomic import atomic_write_text
from logfold.utils.exceptions import InvalidArgumentError, ModelFormatError, PredictorConfigError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class PredictionModel:
    """
    k-means buckets over prefix features with one regressor per bucket.

    Buckets trained on fewer than ``config.min_bucket_size`` samples hold
    ``None`` and predict the global training mean.
    """

    config: PredictorConfig
    encoder: ActivityEncoder
    centroids: np.ndarray
    regressors: tuple[Optional[Regressor], ...]
    fallback: float
    bucket_sizes: tuple[int, ...]

    @property
    def feature_length(self) -> int:
        return int(self.centroids.shape[1])

    def bucket_of(self, X: np.ndarray) -> np.ndarray:
        """Index of the nearest centroid per row (lowest index on ties)."""
        distances = ((X[:, None, :] - self.centroids[None, :, :]) ** 2).sum(axis=2)
        return np.argmin(distances, axis=1)

    def predict_matrix(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.feature_length:
            raise InvalidArgumentError(
                f"Feature length {X.shape[-1] if X.ndim else 0} does not match the model's {self.feature_length}"
            )
        buckets = self.bucket_of(X)
        result = np.full(X.shape[0], self.fallback)
        for bucket, regressor in enumerate(self.regressors):
            rows = buckets == bucket
            if regressor is not None and rows.any():
                result[rows] = regressor.predict(X[rows])
        return np.clip(result, 0.0, None)


def _matrix(samples: Sequence[PrefixSample]) -> tuple[np.ndarray, np.ndarray]:
    lengths = {len(s.features) for s in samples}
    if len(lengths) > 1:
        raise InvalidArgumentError(f"Samples have differing feature lengths: {sorted(lengths)}")
    X = np.array([s.features for s in samples], dtype=float)
    y = np.array([s.target for s in samples], dtype=float)
    return X, y


def train(
    samples: Sequence[PrefixSample],
    config: Optional[PredictorConfig] = None,
    encoder: Optional[ActivityEncoder] = None,
) -> PredictionModel:
    """
    Bucket samples with k-means (k-means++ seeding, fixed seed) and fit one
    regressor per bucket.

    Raises:
        PredictorConfigError: If there are fewer samples than buckets
    """
    config = config or PredictorConfig()
    if len(samples) < config.k:
        raise PredictorConfigError(
            f"{len(samples)} training samples cannot fill k={config.k} buckets; "
            f"use a smaller k (at most {len(samples)})"
        )
    X, y = _matrix(samples)

    with warnings.catch_warnings():
        # Fewer distinct prefixes than k leaves duplicate centroids
        warnings.simplefilter("ignore", ConvergenceWarning)
        kmeans = KMeans(
            n_clusters=config.k,
            init="k-means++",
            n_init=1,
            max_iter=config.kmeans_max_iter,
            random_state=config.seed,
        ).fit(X)
    labels = kmeans.labels_
    fallback = float(y.mean())

    regressors: list[Optional[Regressor]] = []
    sizes = []
    for bucket in range(config.k):
        rows = labels == bucket
        sizes.append(int(rows.sum()))
        if rows.sum() < config.min_bucket_size:
            regressors.append(None)
            continue
        regressors.append(make_regressor(config).fit(X[rows], y[rows]))

    logger.debug(
        f"Trained model on {len(samples)} samples: buckets {sizes}, "
        f"{sum(r is None for r in regressors)} on fallback"
    )
    return PredictionModel(
        config=config,
        encoder=encoder or ActivityEncoder(vocabulary=()),
        centroids=np.asarray(kmeans.cluster_centers_, dtype=float),
        regressors=tuple(regressors),
        fallback=fallback,
        bucket_sizes=tuple(sizes),
    )


def predict(model: PredictionModel, sample: PrefixSample) -> float:
    """
    Remaining time in seconds for one sample, never negative.

    Raises:
        InvalidArgumentError: If the feature length does not match the model
    """
    return float(model.predict_matrix(np.array([sample.features], dtype=float))[0])


def predict_many(model: PredictionModel, samples: Sequence[PrefixSample]) -> list[float]:
    if not samples:
        return []
    X, _ = _matrix(samples)
    return [float(v) for v in model.predict_matrix(X)]


def mae(predictions: Sequence[float], actuals: Sequence[float]) -> float:
    """
    Mean absolute error.

    Raises:
        InvalidArgumentError: On empty input or a length mismatch
    """
    if len(predictions) != len(actuals):
        raise InvalidArgumentError(
            f"Length mismatch: {len(predictions)} predictions vs {len(actuals)} actual values"
        )
    if not predictions:
        raise InvalidArgumentError("MAE of an empty sample is undefined")
    diff = np.abs(np.asarray(predictions, dtype=float) - np.asarray(actuals, dtype=float))
    return float(diff.mean())


def evaluate(model: PredictionModel, samples: Sequence[PrefixSample]) -> tuple[float, list[float]]:
    """MAE of the model on ``samples`` and the predictions themselves."""
    predictions = predict_many(model, samples)
    return mae(predictions, [s.target for s in samples]), predictions


def save_model(model: PredictionModel, path: str | Path) -> Path:
    """Persist encoder, centroids, per-bucket regressors and fallback as JSON."""
    data = {
        "config": model.config.model_dump(mode="json"),
        "vocabulary": list(model.encoder.vocabulary),
        "centroids": model.centroids.tolist(),
        "regressors": [r.to_dict() if r is not None else None for r in model.regressors],
        "fallback": model.fallback,
        "bucket_sizes": list(model.bucket_sizes),
    }
    return atomic_write_text(Path(path), json.dumps(data) + "\n")


def load_model(path: str | Path) -> PredictionModel:
    """
    Raises:
        FileNotFoundError: If the file does not exist
        ModelFormatError: If the file is not a valid model
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Model file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        centroids = np.asarray(data["centroids"], dtype=float)
        regressors = tuple(regressor_from_dict(r) if r is not None else None for r in data["regressors"])
        model = PredictionModel(
            config=PredictorConfig(**data["config"]),
            encoder=ActivityEncoder(vocabulary=tuple(data["vocabulary"])),
            centroids=centroids,
            regressors=regressors,
            fallback=float(data["fallback"]),
            bucket_sizes=tuple(int(s) for s in data["bucket_sizes"]),
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f"Invalid model file {path}: {e}") from e
    if centroids.ndim != 2 or len(regressors) != centroids.shape[0]:
        raise ModelFormatError(f"Model file {path}: {len(regressors)} regressors for centroids {centroids.shape}")
    return model
