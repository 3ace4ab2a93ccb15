"""Regressor contract, the built-in boosted stumps and the optional XGBoost adapter."""

from dataclasses import dataclass, field
from typing import Any, Callable, Protocol, runtime_checkable

import numpy as np

from logfold.config.settings import PredictorConfig
from logfold.utils.exceptions import ModelFormatError, PredictorConfigError


@runtime_checkable
class Regressor(Protocol):
    """Anything that fits and predicts real targets from real feature vectors."""

    name: str

    def fit(self, X: np.ndarray, y: np.ndarray) -> "Regressor": ...

    def predict(self, X: np.ndarray) -> np.ndarray: ...

    def to_dict(self) -> dict[str, Any]: ...


@dataclass(frozen=True)
class Stump:
    """Depth-1 regression tree: ``left`` when x[feature] <= threshold, else ``right``."""

    feature: int
    threshold: float
    left: float
    right: float

    def predict(self, X: np.ndarray) -> np.ndarray:
        if self.feature < 0:
            return np.full(X.shape[0], self.left)
        return np.where(X[:, self.feature] <= self.threshold, self.left, self.right)


def fit_stump(X: np.ndarray, residuals: np.ndarray, order: np.ndarray, min_leaf: int = 1) -> Stump:
    """
    Least-squares stump over all features.

    ``order`` holds per-feature argsorts of X (columns). Splits are placed
    midway between distinct sorted values and leave at least ``min_leaf``
    samples on each side; the first best split wins.
    A matrix with no usable split yields a constant stump (feature -1).
    """
    n, d = X.shape
    total = residuals.sum()
    best_score = total**2 / n
    best = Stump(feature=-1, threshold=0.0, left=total / n, right=total / n)
    counts = np.arange(1, n)
    for f in range(d):
        xs = X[order[:, f], f]
        left_sum = np.cumsum(residuals[order[:, f]])[:-1]
        valid = (xs[:-1] < xs[1:]) & (counts >= min_leaf) & (n - counts >= min_leaf)
        if not valid.any():
            continue
        right_sum = total - left_sum
        score = np.where(valid, left_sum**2 / counts + right_sum**2 / (n - counts), -np.inf)
        i = int(np.argmax(score))
        if score[i] > best_score + 1e-12 * max(1.0, abs(best_score)):
            best_score = float(score[i])
            best = Stump(
                feature=f,
                threshold=float((xs[i] + xs[i + 1]) / 2),
                left=float(left_sum[i] / counts[i]),
                right=float(right_sum[i] / (n - counts[i])),
            )
    return best


@dataclass
class BoostedStumps:
    """
    Gradient boosting with squared loss over depth-1 trees.

    ``train_loss`` holds the training MSE after each round; with a learning
    rate in (0, 1] it never increases. Every leaf holds at least
    ``min_samples_leaf`` training samples.
    """

    n_rounds: int = 100
    learning_rate: float = 0.1
    min_samples_leaf: int = 20
    name: str = "stumps"
    base: float = 0.0
    stumps: list[Stump] = field(default_factory=list)
    train_loss: list[float] = field(default_factory=list)

    def fit(self, X: np.ndarray, y: np.ndarray) -> "BoostedStumps":
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        self.base = float(y.mean())
        self.stumps = []
        self.train_loss = []
        prediction = np.full(y.shape[0], self.base)
        order = np.argsort(X, axis=0, kind="stable")
        for _ in range(self.n_rounds):
            residuals = y - prediction
            stump = fit_stump(X, residuals, order, self.min_samples_leaf)
            scaled = Stump(
                feature=stump.feature,
                threshold=stump.threshold,
                left=stump.left * self.learning_rate,
                right=stump.right * self.learning_rate,
            )
            prediction = prediction + scaled.predict(X)
            self.stumps.append(scaled)
            self.train_loss.append(float(np.mean((y - prediction) ** 2)))
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        result = np.full(X.shape[0], self.base)
        for stump in self.stumps:
            result += stump.predict(X)
        return result

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "n_rounds": self.n_rounds,
            "learning_rate": self.learning_rate,
            "min_samples_leaf": self.min_samples_leaf,
            "base": self.base,
            "stumps": [[s.feature, s.threshold, s.left, s.right] for s in self.stumps],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "BoostedStumps":
        try:
            model = cls(
                n_rounds=int(data["n_rounds"]),
                learning_rate=float(data["learning_rate"]),
                min_samples_leaf=int(data.get("min_samples_leaf", 1)),
            )
            model.base = float(data["base"])
            model.stumps = [
                Stump(feature=int(f), threshold=float(t), left=float(left), right=float(right))
                for f, t, left, right in data["stumps"]
            ]
        except (KeyError, TypeError, ValueError) as e:
            raise ModelFormatError(f"Malformed stump ensemble: {e}") from e
        return model


class XGBoostRegressor:
    """Adapter for ``xgboost.XGBRegressor`` (install the ``xgboost`` extra)."""

    name = "xgboost"

    def __init__(self, n_rounds: int = 100, learning_rate: float = 0.1, seed: int = 42) -> None:
        try:
            from xgboost import XGBRegressor
        except ImportError as e:
            raise PredictorConfigError(
                "Regressor 'xgboost' needs the xgboost package: pip install 'logfold[xgboost]'"
            ) from e
        self.model = XGBRegressor(
            n_estimators=n_rounds,
            learning_rate=learning_rate,
            random_state=seed,
            n_jobs=1,
        )

    def fit(self, X: np.ndarray, y: np.ndarray) -> "XGBoostRegressor":
        self.model.fit(np.asarray(X, dtype=float), np.asarray(y, dtype=float))
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(self.model.predict(np.asarray(X, dtype=float)), dtype=float)

    def to_dict(self) -> dict[str, Any]:
        raw = self.model.get_booster().save_raw(raw_format="json")
        return {"name": self.name, "booster": bytes(raw).decode("utf-8")}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "XGBoostRegressor":
        regressor = cls()
        try:
            regressor.model.load_model(bytearray(data["booster"].encode("utf-8")))
        except (KeyError, ValueError) as e:
            raise ModelFormatError(f"Malformed xgboost model: {e}") from e
        return regressor


REGRESSORS: dict[str, Callable[[PredictorConfig], Regressor]] = {
    "stumps": lambda cfg: BoostedStumps(
        n_rounds=cfg.n_rounds, learning_rate=cfg.learning_rate, min_samples_leaf=cfg.min_samples_leaf
    ),
    "xgboost": lambda cfg: XGBoostRegressor(
        n_rounds=cfg.n_rounds, learning_rate=cfg.learning_rate, seed=cfg.seed
    ),
}

LOADERS: dict[str, Callable[[dict[str, Any]], Regressor]] = {
    "stumps": BoostedStumps.from_dict,
    "xgboost": XGBoostRegressor.from_dict,
}


def make_regressor(config: PredictorConfig) -> Regressor:
    """
    Raises:
        PredictorConfigError: If the regressor name is unknown
    """
    factory = REGRESSORS.get(config.regressor)
    if factory is None:
        raise PredictorConfigError(
            f"Unknown regressor '{config.regressor}'. Available: {sorted(REGRESSORS)}"
        )
    return factory(config)


def regressor_from_dict(data: dict[str, Any]) -> Regressor:
    loader = LOADERS.get(data.get("name", ""))
    if loader is None:
        raise ModelFormatError(f"Unknown regressor in model file: {data.get('name')!r}")
    return loader(data)
