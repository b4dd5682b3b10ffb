"""Linear models: multinomial logistic regression and a linear one-vs-rest SVM.

Both train by deterministic full-batch (sub)gradient descent; neither uses
randomness, so models depend only on the numbers in (X, y, hyperparameters).
"""

from __future__ import annotations

import numpy as np

N_CLASSES = 3


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def _onehot(y: np.ndarray) -> np.ndarray:
    out = np.zeros((len(y), N_CLASSES))
    out[np.arange(len(y)), y] = 1.0
    return out


def maxent_loss_and_grad(
    weights: np.ndarray, bias: np.ndarray, X: np.ndarray, y_onehot: np.ndarray, l2: float
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean cross-entropy plus L2 penalty on weights (bias unpenalized)."""
    n = X.shape[0]
    probs = _softmax(X @ weights + bias)
    eps = 1e-300  # log(0) guard; cannot trigger on reachable probabilities but keeps grad checks finite
    loss = -np.sum(y_onehot * np.log(probs + eps)) / n + 0.5 * l2 * np.sum(weights**2)
    delta = (probs - y_onehot) / n
    grad_w = X.T @ delta + l2 * weights
    grad_b = delta.sum(axis=0)
    return float(loss), grad_w, grad_b


def fit_maxent(X: np.ndarray, y: np.ndarray, l2: float, learning_rate: float, epochs: int) -> dict:
    n_terms = X.shape[1]
    weights = np.zeros((n_terms, N_CLASSES))
    bias = np.zeros(N_CLASSES)
    y_onehot = _onehot(y)
    losses = []
    for _ in range(epochs):
        loss, grad_w, grad_b = maxent_loss_and_grad(weights, bias, X, y_onehot, l2)
        losses.append(loss)
        weights -= learning_rate * grad_w
        bias -= learning_rate * grad_b
    return {
        "kind": "maxent",
        "weights": weights.tolist(),
        "bias": bias.tolist(),
        "training_loss": losses,
    }


def scores_maxent(params: dict, X: np.ndarray) -> np.ndarray:
    weights = np.asarray(params["weights"])
    bias = np.asarray(params["bias"])
    return _softmax(X @ weights + bias)


def fit_svm(X: np.ndarray, y: np.ndarray, C: float, epochs: int) -> dict:
    """One-vs-rest linear SVM, full-batch Pegasos-style subgradient descent.

    Objective per class: (lambda/2)||w||^2 + mean hinge, lambda = 1/(C*n);
    step size 1/(lambda*t) with the usual projection onto the
    1/sqrt(lambda) ball. Bias follows the subgradient at rate 1/t.
    """
    n, n_terms = X.shape
    lam = 1.0 / (C * n)
    weights = np.zeros((n_terms, N_CLASSES))
    bias = np.zeros(N_CLASSES)
    for c in range(N_CLASSES):
        yc = np.where(y == c, 1.0, -1.0)
        w = np.zeros(n_terms)
        b = 0.0
        for t in range(1, epochs + 1):
            eta = 1.0 / (lam * t)
            margin = yc * (X @ w + b)
            viol = margin < 1.0
            grad_w = lam * w - (X[viol].T @ yc[viol]) / n
            grad_b = -yc[viol].sum() / n
            w -= eta * grad_w
            b -= grad_b / t
            norm = np.linalg.norm(w)
            cap = 1.0 / np.sqrt(lam)
            if norm > cap:
                w *= cap / norm
        weights[:, c] = w
        bias[c] = b
    return {"kind": "svm", "weights": weights.tolist(), "bias": bias.tolist()}


def scores_svm(params: dict, X: np.ndarray) -> np.ndarray:
    weights = np.asarray(params["weights"])
    bias = np.asarray(params["bias"])
    return X @ weights + bias
