"""Binary classification metrics: precision, recall, F1, and rank AUC."""

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .data import Dataset
from .forest import ForestModel


@dataclass(frozen=True)
class ClassificationMetrics:
    precision: float
    recall: float
    f1: float
    auc: float

    def __post_init__(self):
        for v in (self.precision, self.recall, self.f1, self.auc):
            if not (0.0 <= v <= 1.0):
                raise ValueError("metrics must lie in [0, 1]")


def rank_auc(scores: np.ndarray, labels: np.ndarray) -> float:
    """AUC as the Mann-Whitney rank statistic; ties contribute 1/2."""
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels)
    n_pos = int(np.sum(labels == 1))
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC needs both classes present")
    ranks = rankdata(scores)  # average ranks handle ties
    pos_rank_sum = float(np.sum(ranks[labels == 1]))
    return (pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def metrics_from_scores(scores: np.ndarray, labels: np.ndarray,
                        threshold: float = 0.5) -> ClassificationMetrics:
    pred = np.asarray(scores) >= threshold
    actual = np.asarray(labels) == 1
    tp = int(np.sum(pred & actual))
    fp = int(np.sum(pred & ~actual))
    fn = int(np.sum(~pred & actual))
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = (2.0 * precision * recall / (precision + recall)) if precision + recall else 0.0
    return ClassificationMetrics(precision=precision, recall=recall, f1=f1,
                                 auc=rank_auc(scores, labels))


def evaluate_model(model: ForestModel, test: Dataset,
                   threshold: float = 0.5) -> ClassificationMetrics:
    """Positive-class metrics of the forest on a held-out dataset."""
    if test.n_rows == 0:
        raise ValueError("test set must be non-empty")
    return metrics_from_scores(model.predict_proba(test), test.labels, threshold)
