"""Remaining-time prediction at prediction points."""

from logfold.predictor.encoding import ActivityEncoder, PrefixSample, encode_prefix, extract_prefixes
from logfold.predictor.model import (
    PredictionModel,
    evaluate,
    load_model,
    mae,
    predict,
    predict_many,
    save_model,
    train,
)
from logfold.predictor.regressors import (
    BoostedStumps,
    Regressor,
    Stump,
    XGBoostRegressor,
    fit_stump,
    make_regressor,
)
from logfold.predictor.workflow import PointEvaluation, evaluate_point

__all__ = [
    "ActivityEncoder",
    "PrefixSample",
    "encode_prefix",
    "extract_prefixes",
    "PredictionModel",
    "train",
    "predict",
    "predict_many",
    "evaluate",
    "mae",
    "save_model",
    "load_model",
    "Regressor",
    "BoostedStumps",
    "Stump",
    "fit_stump",
    "XGBoostRegressor",
    "make_regressor",
    "PointEvaluation",
    "evaluate_point",
]
