"""Wholesale-customers dataset loading, encoding, and splitting."""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np


class SchemaError(ValueError):
    """The input file does not have the expected columns."""


class ParseError(ValueError):
    """A cell could not be parsed as a number."""


# Channel is the binary target; everything else is a feature. The public
# file spells the last column "Delicassen"; it is normalized on load.
TARGET_COLUMN = "Channel"
FEATURE_COLUMNS = ["Region", "Fresh", "Milk", "Grocery", "Frozen",
                   "Detergents_Paper", "Delicatessen"]
COLUMN_ALIASES = {"Delicassen": "Delicatessen"}
CATEGORICAL_COLUMNS = {"Region"}


@dataclass
class Dataset:
    features: np.ndarray            # (n, n_features) float
    labels: np.ndarray              # (n,) int in {0, 1}
    feature_names: list[str]
    categorical_mask: np.ndarray    # (n_features,) bool

    def __post_init__(self):
        if self.features.shape[0] != self.labels.shape[0]:
            raise ValueError("row count must equal label count")
        if not np.all(np.isin(self.labels, (0, 1))):
            raise ValueError("labels must be binary")
        if not np.all(np.isfinite(self.features)):
            raise ValueError("features must not contain missing values")

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    def subset(self, idx: np.ndarray) -> "Dataset":
        return Dataset(self.features[idx].copy(), self.labels[idx].copy(),
                       list(self.feature_names), self.categorical_mask.copy())

    def categories(self) -> dict[int, np.ndarray]:
        """Sorted distinct values of each categorical column."""
        return {j: np.unique(self.features[:, j])
                for j in np.flatnonzero(self.categorical_mask)}


def load_dataset(path) -> Dataset:
    """Load the wholesale CSV: Channel {1,2} -> labels {0,1}, 7 features."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        header = [COLUMN_ALIASES.get(h.strip(), h.strip()) for h in header]
        for col in [TARGET_COLUMN] + FEATURE_COLUMNS:
            if col not in header:
                raise SchemaError(f"{path}: missing column {col!r}")
        col_of = {name: header.index(name) for name in [TARGET_COLUMN] + FEATURE_COLUMNS}
        rows = []
        for i, row in enumerate(reader):
            if not row:
                continue
            try:
                rows.append([float(row[col_of[c]])
                             for c in [TARGET_COLUMN] + FEATURE_COLUMNS])
            except (ValueError, IndexError) as e:
                raise ParseError(f"{path}: bad value in data row {i}: {e}") from None
    data = np.asarray(rows, dtype=float)
    channel = data[:, 0]
    if not np.all(np.isin(channel, (1.0, 2.0))):
        raise ParseError(f"{path}: Channel values must be 1 or 2")
    mask = np.array([c in CATEGORICAL_COLUMNS for c in FEATURE_COLUMNS])
    return Dataset(features=data[:, 1:], labels=(channel == 2.0).astype(int),
                   feature_names=list(FEATURE_COLUMNS), categorical_mask=mask)


def stratified_split(data: Dataset, train_ratio: float, seed: int):
    """Per-class proportional train/test split, deterministic in the seed."""
    if not (0.0 < train_ratio < 1.0):
        raise ValueError("train_ratio must lie strictly between 0 and 1")
    rng = np.random.default_rng(seed)
    train_idx, test_idx = [], []
    for cls in (0, 1):
        idx = np.flatnonzero(data.labels == cls)
        idx = rng.permutation(idx)
        n_train = int(round(train_ratio * idx.size))
        train_idx.append(idx[:n_train])
        test_idx.append(idx[n_train:])
    train_idx = np.sort(np.concatenate(train_idx))
    test_idx = np.sort(np.concatenate(test_idx))
    return data.subset(train_idx), data.subset(test_idx)


def design_matrix(data: Dataset, categories: Optional[dict[int, np.ndarray]] = None):
    """Numeric matrix for the forest: categorical columns one-hot encoded.

    `categories` fixes the indicator columns (pass the training set's so
    train and test encodings line up); defaults to the dataset's own.
    """
    if categories is None:
        categories = data.categories()
    cols, names = [], []
    for j, name in enumerate(data.feature_names):
        if j in categories:
            for v in categories[j]:
                cols.append((data.features[:, j] == v).astype(float))
                names.append(f"{name}={v:g}")
        else:
            cols.append(data.features[:, j])
            names.append(name)
    return np.column_stack(cols), names


# ---------------------------------------------------------------------------
# Synthetic stand-in generator. The real wholesale-customers file is not
# redistributable here; this produces a deterministic 440-row surrogate with
# the same Channel (298/142) and Region (77/47/316) marginals and spend
# distributions shaped like the public data (retail channels buy far more
# Milk/Grocery/Detergents_Paper, hospitality buys more Fresh/Frozen).

# joint (region, channel) counts consistent with both marginals
_JOINT = {(1, 1): 59, (1, 2): 18, (2, 1): 20, (2, 2): 27, (3, 1): 219, (3, 2): 97}

# lognormal medians per (column, channel)
_MEDIANS = {
    "Fresh": {1: 9000.0, 2: 5600.0},
    "Milk": {1: 3100.0, 2: 6600.0},
    "Grocery": {1: 3600.0, 2: 9000.0},
    "Frozen": {1: 2300.0, 2: 1300.0},
    "Detergents_Paper": {1: 700.0, 2: 3600.0},
    "Delicatessen": {1: 1000.0, 2: 1100.0},
}
_SIGMA = 1.05


def make_standin_wholesale(path, seed: int = 20240824) -> None:
    """Write the synthetic stand-in CSV (public-file column spelling)."""
    rng = np.random.default_rng(seed)
    pairs = [(r, c) for (r, c), n in sorted(_JOINT.items()) for _ in range(n)]
    rng.shuffle(pairs)
    header = ["Channel", "Region", "Fresh", "Milk", "Grocery", "Frozen",
              "Detergents_Paper", "Delicassen"]
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for region, channel in pairs:
            spend = [
                max(3, int(round(rng.lognormal(np.log(_MEDIANS[c][channel]), _SIGMA))))
                for c in ["Fresh", "Milk", "Grocery", "Frozen",
                          "Detergents_Paper", "Delicatessen"]
            ]
            w.writerow([channel, region] + spend)
