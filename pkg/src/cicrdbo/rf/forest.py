"""From-scratch random forest: bagged Gini CART trees.

The per-tree build and predict loops are numba-compiled; everything
around them (bootstrap draws, encoding, aggregation) is plain numpy.
Each tree's randomness comes from a substream derived from
(seed, tree index), so training is deterministic.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numba import njit

from .data import Dataset, design_matrix


def gini_impurity(class_counts) -> float:
    """1 - sum p_c^2 for a two-class count pair."""
    a, b = class_counts
    if a < 0 or b < 0 or a + b == 0:
        raise ValueError("counts must be nonnegative and not both zero")
    n = a + b
    return 1.0 - (a / n) ** 2 - (b / n) ** 2


@njit(cache=True)
def _build_tree(X, y, max_depth, min_samples_split, max_features, rng_seed):
    n, p = X.shape
    max_nodes = 2 * n + 1
    feature = np.full(max_nodes, -1, dtype=np.int64)
    threshold = np.zeros(max_nodes)
    left = np.full(max_nodes, -1, dtype=np.int64)
    right = np.full(max_nodes, -1, dtype=np.int64)
    value = np.zeros(max_nodes)
    importances = np.zeros(p)

    np.random.seed(rng_seed)
    idx = np.arange(n)
    feats = np.arange(p)
    vals = np.empty(n)
    ys = np.empty(n, dtype=np.int64)
    tmp = np.empty(n, dtype=np.int64)

    # explicit DFS stack of (node, start, end, depth) over the idx array
    stack_node = np.empty(max_nodes, dtype=np.int64)
    stack_start = np.empty(max_nodes, dtype=np.int64)
    stack_end = np.empty(max_nodes, dtype=np.int64)
    stack_depth = np.empty(max_nodes, dtype=np.int64)
    top = 0
    stack_node[0], stack_start[0], stack_end[0], stack_depth[0] = 0, 0, n, 0
    top = 1
    n_nodes = 1

    while top > 0:
        top -= 1
        node = stack_node[top]
        start = stack_start[top]
        end = stack_end[top]
        depth = stack_depth[top]
        n_node = end - start

        pos = 0
        for ii in range(start, end):
            pos += y[idx[ii]]
        value[node] = pos / n_node

        if depth >= max_depth or n_node < min_samples_split or pos == 0 or pos == n_node:
            continue  # leaf

        # feature subset: partial Fisher-Yates; skipped entirely when all
        # features are in play so that growth consumes no randomness then
        if max_features < p:
            for ii in range(max_features):
                jj = ii + np.random.randint(0, p - ii)
                feats[ii], feats[jj] = feats[jj], feats[ii]
            k = max_features
        else:
            k = p

        parent_gini = 1.0 - (pos / n_node) ** 2 - ((n_node - pos) / n_node) ** 2
        best_wg = np.inf
        best_f = -1
        best_thr = 0.0
        for fi in range(k):
            f = feats[fi]
            for ii in range(n_node):
                vals[ii] = X[idx[start + ii], f]
                ys[ii] = y[idx[start + ii]]
            order = np.argsort(vals[:n_node])
            left_n = 0
            left_pos = 0
            for ii in range(n_node - 1):
                o = order[ii]
                left_n += 1
                left_pos += ys[o]
                nxt = order[ii + 1]
                if vals[nxt] <= vals[o]:
                    continue
                right_n = n_node - left_n
                right_pos = pos - left_pos
                gl = 1.0 - (left_pos / left_n) ** 2 - ((left_n - left_pos) / left_n) ** 2
                gr = 1.0 - (right_pos / right_n) ** 2 - ((right_n - right_pos) / right_n) ** 2
                wg = (left_n * gl + right_n * gr) / n_node
                if wg < best_wg:
                    best_wg = wg
                    best_f = f
                    best_thr = 0.5 * (vals[o] + vals[nxt])
        if best_f < 0:
            continue  # all candidate features constant on this node

        # stable partition of idx[start:end] by the chosen split
        n_left = 0
        for ii in range(start, end):
            if X[idx[ii], best_f] <= best_thr:
                tmp[n_left] = idx[ii]
                n_left += 1
        n_right = 0
        for ii in range(start, end):
            if X[idx[ii], best_f] > best_thr:
                tmp[n_left + n_right] = idx[ii]
                n_right += 1
        for ii in range(n_node):
            idx[start + ii] = tmp[ii]

        feature[node] = best_f
        threshold[node] = best_thr
        left[node] = n_nodes
        right[node] = n_nodes + 1
        importances[best_f] += n_node * (parent_gini - best_wg)

        stack_node[top], stack_start[top], stack_end[top], stack_depth[top] = (
            n_nodes, start, start + n_left, depth + 1)
        top += 1
        stack_node[top], stack_start[top], stack_end[top], stack_depth[top] = (
            n_nodes + 1, start + n_left, end, depth + 1)
        top += 1
        n_nodes += 2

    return (feature[:n_nodes], threshold[:n_nodes], left[:n_nodes],
            right[:n_nodes], value[:n_nodes], importances)


@njit(cache=True)
def _predict_tree(feature, threshold, left, right, value, X, out):
    for i in range(X.shape[0]):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = value[node]


@dataclass
class ForestModel:
    trees: list                       # per-tree (feature, threshold, left, right, value)
    feature_names: list[str]
    categories: dict                  # categorical encoding used at fit time
    feature_importances: np.ndarray   # normalized mean impurity decrease

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        X = np.ascontiguousarray(X, dtype=float)
        acc = np.zeros(X.shape[0])
        buf = np.empty(X.shape[0])
        for tree in self.trees:
            _predict_tree(*tree, X, buf)
            acc += buf
        return acc / len(self.trees)

    def predict_proba(self, data: Dataset) -> np.ndarray:
        X, _ = design_matrix(data, self.categories)
        return self.predict_proba_matrix(X)

    def predict(self, data: Dataset, threshold: float = 0.5) -> np.ndarray:
        return (self.predict_proba(data) >= threshold).astype(int)


def train_forest(train: Dataset, hp, seed: int, categories: Optional[dict] = None) -> ForestModel:
    """Fit hp.n_trees bagged CART trees on the training data."""
    if np.unique(train.labels).size < 2:
        raise ValueError("training set must contain both classes")
    if categories is None:
        categories = train.categories()
    X, names = design_matrix(train, categories)
    X = np.ascontiguousarray(X)
    y = train.labels.astype(np.int64)
    n, p = X.shape
    max_features = int(np.ceil(hp.feature_fraction * p))

    trees = []
    importances = np.zeros(p)
    for t in range(hp.n_trees):
        rng = np.random.default_rng([seed, t])
        boot = rng.integers(0, n, size=n)
        tree_seed = int(rng.integers(0, 2**31 - 1))
        out = _build_tree(X[boot], y[boot], hp.max_depth, hp.min_samples_split,
                          max_features, tree_seed)
        trees.append(out[:5])
        importances += out[5]
    total = importances.sum()
    if total > 0:
        importances /= total
    return ForestModel(trees=trees, feature_names=names, categories=categories,
                       feature_importances=importances)
