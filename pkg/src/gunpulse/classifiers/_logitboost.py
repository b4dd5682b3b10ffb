"""LogitBoost with decision stumps, one-vs-rest over the three classes.

Each round fits a weighted-least-squares stump to the working response
z = (y* - p) / w with w = p(1-p), then adds half the stump output to the
additive score F, following the standard additive logistic regression
recipe (responses clipped to +-4, weights floored for stability).

For fixed stump sides the optimal constants are weighted means, so the
weighted error reduces to sum(w z^2) minus sum(wz)^2/sum(w) per side;
integer term counts let one weighted bincount over (feature, value) keys
score every candidate threshold of every feature per round.
"""

from __future__ import annotations

import numpy as np

N_CLASSES = 3
Z_CLIP = 4.0
W_FLOOR = 1e-8


class _StumpSearch:
    """Precomputed (feature, value) grid reused across boosting rounds."""

    def __init__(self, X: np.ndarray):
        X = np.rint(X).astype(np.int64)
        self.n_rows, self.n_features = X.shape
        self.width = int(X.max()) + 1
        self.keys = (np.arange(self.n_features, dtype=np.int64)[None, :] * self.width + X).ravel()
        self.minlength = self.n_features * self.width
        counts = np.bincount(self.keys, minlength=self.minlength).reshape(self.n_features, self.width)
        observed = counts > 0
        n_left = np.cumsum(counts, axis=1)
        # A candidate sits at an observed value with something to its right.
        self.valid = observed & (n_left < self.n_rows)
        # Midpoint partner: the next observed value after each grid cell.
        idx = np.arange(self.width)
        filled = np.where(observed, idx, self.width + 1)
        suffix_min = np.minimum.accumulate(filled[:, ::-1], axis=1)[:, ::-1]
        self.next_observed = np.empty_like(filled)
        self.next_observed[:, :-1] = suffix_min[:, 1:]
        self.next_observed[:, -1] = self.width + 1
        self.X = X

    def fit_stump(self, z: np.ndarray, w: np.ndarray) -> dict:
        total_w = w.sum()
        total_wz = (w * z).sum()
        if not self.valid.any():
            return {"const": float(total_wz / total_w)}
        w_grid = np.bincount(self.keys, weights=np.repeat(w, self.n_features), minlength=self.minlength)
        wz_grid = np.bincount(
            self.keys, weights=np.repeat(w * z, self.n_features), minlength=self.minlength
        )
        left_w = np.cumsum(w_grid.reshape(self.n_features, self.width), axis=1)
        left_wz = np.cumsum(wz_grid.reshape(self.n_features, self.width), axis=1)
        right_w = total_w - left_w
        right_wz = total_wz - left_wz
        with np.errstate(divide="ignore", invalid="ignore"):
            gain = left_wz**2 / left_w + right_wz**2 / right_w
        gain[~self.valid] = -np.inf
        flat = int(np.argmax(gain))
        f, v = divmod(flat, self.width)
        threshold = (float(v) + float(self.next_observed[f, v])) / 2.0
        return {
            "f": int(f),
            "t": threshold,
            "lo": float(left_wz[f, v] / left_w[f, v]),
            "hi": float(right_wz[f, v] / right_w[f, v]),
        }


def _stump_output(stump: dict, X: np.ndarray) -> np.ndarray:
    if "const" in stump:
        return np.full(X.shape[0], stump["const"])
    return np.where(X[:, stump["f"]] >= stump["t"], stump["hi"], stump["lo"])


def fit(X: np.ndarray, y: np.ndarray, n_rounds: int) -> dict:
    search = _StumpSearch(X)
    stumps_per_class = []
    for c in range(N_CLASSES):
        target = (y == c).astype(np.float64)
        F = np.zeros(len(y))
        stumps = []
        for _ in range(n_rounds):
            p = 1.0 / (1.0 + np.exp(-2.0 * F))
            w = np.maximum(p * (1.0 - p), W_FLOOR)
            z = np.clip((target - p) / w, -Z_CLIP, Z_CLIP)
            stump = search.fit_stump(z, w)
            stumps.append(stump)
            F += 0.5 * _stump_output(stump, search.X)
        stumps_per_class.append(stumps)
    return {"kind": "boosted_tree", "stumps": stumps_per_class}


def scores(params: dict, X: np.ndarray) -> np.ndarray:
    probs = np.zeros((X.shape[0], N_CLASSES))
    for c, stumps in enumerate(params["stumps"]):
        F = np.zeros(X.shape[0])
        for stump in stumps:
            F += 0.5 * _stump_output(stump, X)
        probs[:, c] = 1.0 / (1.0 + np.exp(-2.0 * F))
    denom = probs.sum(axis=1, keepdims=True)
    # All-zero rows cannot occur (sigmoid > 0) but guard the division anyway.
    return probs / np.maximum(denom, 1e-300)
