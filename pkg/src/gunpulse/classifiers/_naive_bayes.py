"""Multinomial naive Bayes over raw term counts with Laplace smoothing.

The payload stores the raw training counts; log-probabilities are derived
at prediction time, which keeps the serialized form exact (no -inf for
classes absent from training - they simply get posterior 0).
"""

from __future__ import annotations

import numpy as np

N_CLASSES = 3


def fit(X: np.ndarray, y: np.ndarray, alpha: float) -> dict:
    n_docs, n_terms = X.shape
    class_doc_counts = np.bincount(y, minlength=N_CLASSES)
    token_counts = np.zeros((N_CLASSES, n_terms))
    for c in range(N_CLASSES):
        token_counts[c] = X[y == c].sum(axis=0)
    return {
        "kind": "naive_bayes",
        "alpha": float(alpha),
        "n_docs": int(n_docs),
        "class_doc_counts": class_doc_counts.tolist(),
        "token_counts": token_counts.tolist(),
    }


def scores(params: dict, X: np.ndarray) -> np.ndarray:
    alpha = params["alpha"]
    doc_counts = np.asarray(params["class_doc_counts"], dtype=np.float64)
    token_counts = np.asarray(params["token_counts"], dtype=np.float64)
    n_docs = float(params["n_docs"])
    n_terms = token_counts.shape[1]

    present = doc_counts > 0
    log_joint = np.full((X.shape[0], N_CLASSES), -np.inf)
    for c in np.nonzero(present)[0]:
        log_prior = np.log(doc_counts[c] / n_docs)
        log_lik = np.log((token_counts[c] + alpha) / (token_counts[c].sum() + alpha * n_terms))
        log_joint[:, c] = log_prior + X @ log_lik

    # Softmax over classes seen in training; absent classes get exactly 0.
    out = np.zeros_like(log_joint)
    finite = log_joint[:, present]
    shifted = np.exp(finite - finite.max(axis=1, keepdims=True))
    out[:, present] = shifted / shifted.sum(axis=1, keepdims=True)
    return out
