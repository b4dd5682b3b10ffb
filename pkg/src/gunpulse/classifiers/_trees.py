"""CART classification trees plus bagging and random-forest ensembles.

Splits are binary on "count >= threshold" with thresholds at midpoints of
consecutive distinct observed values, chosen by minimum Gini impurity.
Ties prefer the lowest feature index, then the lowest threshold, which
keeps training deterministic. Ensembles bootstrap-sample per tree from a
counter-based substream so per-tree work is order-independent.

Split search exploits integer term counts: one bincount over
(feature, value, class) keys yields every candidate threshold of every
feature at once, without sorting.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .._util import substream

N_CLASSES = 3
# Value grids wider than this fall back to rank-compressed values first.
_MAX_GRID = 4096


def _as_counts(X: np.ndarray) -> np.ndarray:
    # Document-term matrices guarantee integer counts; rounding keeps raw
    # float inputs from breaking the histogram arithmetic.
    return np.rint(X).astype(np.int64)


def _best_split_matrix(V: np.ndarray, y_sub: np.ndarray):
    """Best (column, threshold) over all columns of the node matrix V.

    Minimizing weighted child Gini is equivalent to maximizing
    sum(c_left^2)/n_left + sum(c_right^2)/n_right; per-(feature, value,
    class) histograms turn that into prefix sums along the value axis.
    Returns None if no column admits a split.
    """
    m, n_features = V.shape
    width = int(V.max()) + 1
    if width > _MAX_GRID:
        uniq, V = np.unique(V, return_inverse=True)
        V = V.reshape(m, n_features)
        width = len(uniq)
    else:
        uniq = None
    keys = (np.arange(n_features, dtype=np.int64)[None, :] * width + V) * N_CLASSES + y_sub[:, None]
    hist = (
        np.bincount(keys.ravel(), minlength=n_features * width * N_CLASSES)
        .reshape(n_features, width, N_CLASSES)
        .astype(np.float64)
    )
    prefix = np.cumsum(hist, axis=1)
    n_left = prefix.sum(axis=2)
    observed = hist.sum(axis=2) > 0
    valid = observed & (n_left < m)
    if not valid.any():
        return None
    totals = prefix[:, -1, :]
    left_sq = (prefix**2).sum(axis=2)
    right_sq = ((totals[:, None, :] - prefix) ** 2).sum(axis=2)
    with np.errstate(divide="ignore", invalid="ignore"):
        gain = left_sq / n_left + right_sq / (m - n_left)
    gain[~valid] = -np.inf
    flat = int(np.argmax(gain))
    col, value = divmod(flat, width)
    nxt = value + 1 + int(np.argmax(observed[col, value + 1 :]))
    if uniq is not None:
        threshold = (float(uniq[value]) + float(uniq[nxt])) / 2.0
    else:
        threshold = (float(value) + float(nxt)) / 2.0
    return int(col), threshold


def _leaf(y_sub: np.ndarray) -> dict:
    return {"n": np.bincount(y_sub, minlength=N_CLASSES).tolist()}


def _grow_full(
    V: np.ndarray,
    y_sub: np.ndarray,
    depth: int,
    max_depth: Optional[int],
    min_samples_split: int,
) -> dict:
    """Grow on the node's own submatrix; all columns are candidates."""
    if (
        (max_depth is not None and depth >= max_depth)
        or len(y_sub) < min_samples_split
        or len(np.unique(y_sub)) == 1
    ):
        return _leaf(y_sub)
    split = _best_split_matrix(V, y_sub)
    if split is None:
        return _leaf(y_sub)
    col, threshold = split
    go_right = V[:, col] >= threshold
    return {
        "f": int(col),
        "t": threshold,
        "lo": _grow_full(V[~go_right], y_sub[~go_right], depth + 1, max_depth, min_samples_split),
        "hi": _grow_full(V[go_right], y_sub[go_right], depth + 1, max_depth, min_samples_split),
    }


def _grow_mtry(
    X: np.ndarray,
    y: np.ndarray,
    rows: np.ndarray,
    depth: int,
    max_depth: Optional[int],
    mtry: int,
    rng: np.random.Generator,
) -> dict:
    """Random-forest node: a fresh feature sample at every split."""
    y_sub = y[rows]
    if (max_depth is not None and depth >= max_depth) or len(rows) < 2 or len(np.unique(y_sub)) == 1:
        return _leaf(y_sub)
    candidates = np.sort(rng.choice(X.shape[1], size=min(mtry, X.shape[1]), replace=False))
    split = _best_split_matrix(X[np.ix_(rows, candidates)], y_sub)
    if split is None:
        return _leaf(y_sub)
    col, threshold = split
    feature = int(candidates[col])
    go_right = X[rows, feature] >= threshold
    return {
        "f": feature,
        "t": threshold,
        "lo": _grow_mtry(X, y, rows[~go_right], depth + 1, max_depth, mtry, rng),
        "hi": _grow_mtry(X, y, rows[go_right], depth + 1, max_depth, mtry, rng),
    }


def fit_tree(X: np.ndarray, y: np.ndarray, max_depth: Optional[int], min_samples_split: int) -> dict:
    X = _as_counts(X)
    return {"kind": "tree", "root": _grow_full(X, y, 0, max_depth, min_samples_split)}


def fit_bagging(X: np.ndarray, y: np.ndarray, n_estimators: int, seed: int) -> dict:
    X = _as_counts(X)
    n = len(y)
    trees = []
    for i in range(n_estimators):
        rng = substream(seed, i + 1)
        sample = np.sort(rng.integers(0, n, size=n))
        trees.append(_grow_full(X[sample], y[sample], 0, None, 2))
    return {"kind": "bagged_tree", "trees": trees}


def fit_forest(X: np.ndarray, y: np.ndarray, n_trees: int, seed: int) -> dict:
    X = _as_counts(X)
    mtry = max(1, int(np.sqrt(X.shape[1])))
    n = len(y)
    trees = []
    for i in range(n_trees):
        rng = substream(seed, i + 1)
        sample = np.sort(rng.integers(0, n, size=n))
        node_rng = substream(seed, (i + 1) << 20)
        trees.append(_grow_mtry(X, y, sample, 0, None, mtry, node_rng))
    return {"kind": "random_forest", "trees": trees}


def _tree_class_fractions(root: dict, X: np.ndarray) -> np.ndarray:
    out = np.zeros((X.shape[0], N_CLASSES))
    stack = [(root, np.arange(X.shape[0]))]
    while stack:
        node, rows = stack.pop()
        if rows.size == 0:
            continue
        if "n" in node:
            counts = np.asarray(node["n"], dtype=np.float64)
            out[rows] = counts / counts.sum()
        else:
            go_right = X[rows, node["f"]] >= node["t"]
            stack.append((node["lo"], rows[~go_right]))
            stack.append((node["hi"], rows[go_right]))
    return out


def scores_tree(params: dict, X: np.ndarray) -> np.ndarray:
    return _tree_class_fractions(params["root"], X)


def scores_ensemble(params: dict, X: np.ndarray) -> np.ndarray:
    """Majority-vote fractions: each tree votes its argmax class."""
    votes = np.zeros((X.shape[0], N_CLASSES))
    for root in params["trees"]:
        fractions = _tree_class_fractions(root, X)
        winners = np.argmax(fractions, axis=1)
        votes[np.arange(X.shape[0]), winners] += 1.0
    return votes / len(params["trees"])
