"""Forest hyperparameter search driven by the swarm optimizers.

A position in the 4-d unit box decodes to (n_trees, max_depth,
min_samples_split, feature_fraction). Fitness is the negative mean
stratified k-fold CV AUC on the 70% training split, so the optimizer
minimizes as usual. The default configuration is injected into the
initial population, which makes the tuned result never worse than it.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..chaos import SearchBox
from ..engine import OptimizerConfig, run_optimizer
from ..objectives import Objective
from .data import Dataset, stratified_split
from .forest import train_forest
from .metrics import ClassificationMetrics, evaluate_model, rank_auc

RANGES = {
    "n_trees": (10, 300),
    "max_depth": (2, 20),
    "min_samples_split": (2, 10),
    "feature_fraction": (0.1, 1.0),
}


@dataclass(frozen=True)
class RfHyperparams:
    n_trees: int
    max_depth: int
    min_samples_split: int
    feature_fraction: float

    def __post_init__(self):
        for name in ("n_trees", "max_depth", "min_samples_split", "feature_fraction"):
            lo, hi = RANGES[name]
            v = getattr(self, name)
            if not (lo <= v <= hi):
                raise ValueError(f"{name}={v} outside [{lo}, {hi}]")


DEFAULT_HYPERPARAMS = RfHyperparams(
    n_trees=100, max_depth=10, min_samples_split=2, feature_fraction=0.33
)


def _round_half_up(v: float) -> int:
    return int(np.floor(v + 0.5))


def decode_hyperparams(position: np.ndarray) -> RfHyperparams:
    """Affine map from the (clamped) unit box to the hyperparameter ranges."""
    u = np.clip(np.asarray(position, dtype=float), 0.0, 1.0)
    if u.shape != (4,):
        raise ValueError("expected a 4-dimensional position")
    return RfHyperparams(
        n_trees=_round_half_up(10 + u[0] * 290),
        max_depth=_round_half_up(2 + u[1] * 18),
        min_samples_split=_round_half_up(2 + u[2] * 8),
        feature_fraction=float(0.1 + u[3] * 0.9),
    )


def encode_hyperparams(hp: RfHyperparams) -> np.ndarray:
    return np.array([
        (hp.n_trees - 10) / 290,
        (hp.max_depth - 2) / 18,
        (hp.min_samples_split - 2) / 8,
        (hp.feature_fraction - 0.1) / 0.9,
    ])


def stratified_folds(labels: np.ndarray, k: int, seed: int) -> list[np.ndarray]:
    """Round-robin per-class fold assignment; redrawn once if a fold ends
    up single-class, then rejected."""
    for attempt_seed in (seed, seed + 1):
        rng = np.random.default_rng(attempt_seed)
        folds = [[] for _ in range(k)]
        for cls in np.unique(labels):
            idx = rng.permutation(np.flatnonzero(labels == cls))
            for i, row in enumerate(idx):
                folds[i % k].append(row)
        folds = [np.sort(np.array(f, dtype=int)) for f in folds]
        if all(np.unique(labels[f]).size == 2 for f in folds):
            return folds
    raise ValueError(f"cannot build {k} stratified folds with both classes in each")


def cv_fitness(
    train: Dataset,
    hp: RfHyperparams,
    folds: list[np.ndarray],
    seed: int,
    categories: Optional[dict] = None,
) -> float:
    """Mean held-fold AUC across the CV folds (higher is better)."""
    if categories is None:
        categories = train.categories()
    aucs = []
    for fi, fold in enumerate(folds):
        mask = np.ones(train.n_rows, dtype=bool)
        mask[fold] = False
        fit_ds = train.subset(np.flatnonzero(mask))
        held = train.subset(fold)
        model = train_forest(fit_ds, hp, seed=seed * 1009 + fi, categories=categories)
        aucs.append(rank_auc(model.predict_proba(held), held.labels))
    return float(np.mean(aucs))


@dataclass
class TuneResult:
    algorithm: str
    best_hyperparams: RfHyperparams
    cv_auc: float
    default_cv_auc: float
    test_metrics: ClassificationMetrics

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "best_hyperparams": {
                "n_trees": self.best_hyperparams.n_trees,
                "max_depth": self.best_hyperparams.max_depth,
                "min_samples_split": self.best_hyperparams.min_samples_split,
                "feature_fraction": self.best_hyperparams.feature_fraction,
            },
            "cv_auc": self.cv_auc,
            "default_cv_auc": self.default_cv_auc,
            "test_precision": self.test_metrics.precision,
            "test_recall": self.test_metrics.recall,
            "test_f1": self.test_metrics.f1,
            "test_auc": self.test_metrics.auc,
        }


def tune(
    data: Dataset,
    config: OptimizerConfig,
    cv_folds: int = 5,
    train_ratio: float = 0.7,
) -> TuneResult:
    """Optimize the forest hyperparameters on CV AUC, then report held-out
    test metrics of the winner retrained on the full training split."""
    config = config.validate()
    train, test = stratified_split(data, train_ratio, config.seed)
    categories = data.categories()
    folds = stratified_folds(train.labels, cv_folds, config.seed)

    cache: dict[RfHyperparams, float] = {}

    def scored(hp: RfHyperparams) -> float:
        if hp not in cache:
            cache[hp] = cv_fitness(train, hp, folds, config.seed, categories)
        return cache[hp]

    def fitness(x):
        x = np.atleast_2d(x)
        return np.array([-scored(decode_hyperparams(row)) for row in x])

    objective = Objective(
        name="rf_cv_auc",
        box=SearchBox.cube(0.0, 1.0, 4),
        fn=lambda x: fitness(x) if x.ndim > 1 else fitness(x)[0],
    )
    record = run_optimizer(config, objective,
                           seed_individuals=encode_hyperparams(DEFAULT_HYPERPARAMS))

    best_hp = decode_hyperparams(record.final_best_position)
    model = train_forest(train, best_hp, seed=config.seed, categories=categories)
    return TuneResult(
        algorithm=config.algorithm,
        best_hyperparams=best_hp,
        cv_auc=-record.final_best_fitness,
        default_cv_auc=scored(DEFAULT_HYPERPARAMS),
        test_metrics=evaluate_model(model, test),
    )
