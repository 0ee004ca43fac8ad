from .data import Dataset, ParseError, SchemaError, load_dataset, stratified_split
from .forest import ForestModel, gini_impurity, train_forest
from .metrics import ClassificationMetrics, evaluate_model, rank_auc
from .tuning import (
    DEFAULT_HYPERPARAMS,
    RfHyperparams,
    TuneResult,
    cv_fitness,
    decode_hyperparams,
    encode_hyperparams,
    tune,
)

__all__ = [
    "Dataset", "SchemaError", "ParseError", "load_dataset", "stratified_split",
    "ForestModel", "gini_impurity", "train_forest",
    "ClassificationMetrics", "evaluate_model", "rank_auc",
    "RfHyperparams", "DEFAULT_HYPERPARAMS", "TuneResult",
    "decode_hyperparams", "encode_hyperparams", "cv_fitness", "tune",
]
