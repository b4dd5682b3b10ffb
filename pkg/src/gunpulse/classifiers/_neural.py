"""Single-hidden-layer network: tanh units, softmax output, cross-entropy.

Full-batch gradient descent; all parameters initialized uniform(-0.5, 0.5)
from the model's RNG substream in a fixed order (W1, b1, W2, b2).
"""

from __future__ import annotations

import numpy as np

N_CLASSES = 3


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def nn_loss_and_grad(
    w1: np.ndarray,
    b1: np.ndarray,
    w2: np.ndarray,
    b2: np.ndarray,
    X: np.ndarray,
    y_onehot: np.ndarray,
) -> tuple[float, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    n = X.shape[0]
    hidden = np.tanh(X @ w1 + b1)
    probs = _softmax(hidden @ w2 + b2)
    loss = -np.sum(y_onehot * np.log(probs + 1e-300)) / n
    dlogits = (probs - y_onehot) / n
    grad_w2 = hidden.T @ dlogits
    grad_b2 = dlogits.sum(axis=0)
    dhidden = (dlogits @ w2.T) * (1.0 - hidden**2)
    grad_w1 = X.T @ dhidden
    grad_b1 = dhidden.sum(axis=0)
    return float(loss), grad_w1, grad_b1, grad_w2, grad_b2


def init_params(n_terms: int, hidden_units: int, rng: np.random.Generator):
    w1 = rng.uniform(-0.5, 0.5, size=(n_terms, hidden_units))
    b1 = rng.uniform(-0.5, 0.5, size=hidden_units)
    w2 = rng.uniform(-0.5, 0.5, size=(hidden_units, N_CLASSES))
    b2 = rng.uniform(-0.5, 0.5, size=N_CLASSES)
    return w1, b1, w2, b2


def fit(
    X: np.ndarray,
    y: np.ndarray,
    hidden_units: int,
    learning_rate: float,
    epochs: int,
    rng: np.random.Generator,
) -> dict:
    w1, b1, w2, b2 = init_params(X.shape[1], hidden_units, rng)
    y_onehot = np.zeros((len(y), N_CLASSES))
    y_onehot[np.arange(len(y)), y] = 1.0
    losses = []
    for _ in range(epochs):
        loss, g_w1, g_b1, g_w2, g_b2 = nn_loss_and_grad(w1, b1, w2, b2, X, y_onehot)
        losses.append(loss)
        w1 -= learning_rate * g_w1
        b1 -= learning_rate * g_b1
        w2 -= learning_rate * g_w2
        b2 -= learning_rate * g_b2
    return {
        "kind": "neural_net",
        "w1": w1.tolist(),
        "b1": b1.tolist(),
        "w2": w2.tolist(),
        "b2": b2.tolist(),
        "training_loss": losses,
    }


def scores(params: dict, X: np.ndarray) -> np.ndarray:
    hidden = np.tanh(X @ np.asarray(params["w1"]) + np.asarray(params["b1"]))
    return _softmax(hidden @ np.asarray(params["w2"]) + np.asarray(params["b2"]))
