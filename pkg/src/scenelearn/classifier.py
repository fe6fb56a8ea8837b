"""Probabilistic multi-class classifier behind a fit / predict_proba API.

L2-regularized multinomial logistic regression trained by full-batch
gradient descent from zero init.  Deterministic and order-independent:
the gradient is a mean over examples, so permuting the training list
changes nothing beyond floating-point summation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class LabeledExample:
    features: np.ndarray
    class_id: int


@dataclass(frozen=True)
class TrainConfig:
    l2: float = 1e-3
    step: float = 0.5
    max_iters: int = 2000
    grad_tol: float = 1e-5


@dataclass(eq=False)
class ClassifierModel:
    weights: np.ndarray  # (C, D + 1), last column is the bias
    class_count: int
    training_size: int
    loss_history: np.ndarray = field(default_factory=lambda: np.zeros(0))


def loss_and_grad(W: np.ndarray, Xb: np.ndarray, y: np.ndarray, l2: float
                  ) -> tuple[float, np.ndarray]:
    """Mean cross-entropy plus (l2/2)*||W||^2 over non-bias weights, with
    its analytic gradient.  ``Xb`` carries the bias column."""
    n = Xb.shape[0]
    scores = Xb @ W.T
    scores -= scores.max(axis=1, keepdims=True)
    log_z = np.log(np.exp(scores).sum(axis=1))
    log_p = scores - log_z[:, None]
    loss = -log_p[np.arange(n), y].mean()
    W_reg = W.copy()
    W_reg[:, -1] = 0.0
    loss += 0.5 * l2 * float((W_reg ** 2).sum())
    P = np.exp(log_p)
    P[np.arange(n), y] -= 1.0
    grad = (P.T @ Xb) / n + l2 * W_reg
    return loss, grad


def _with_bias(X: np.ndarray) -> np.ndarray:
    return np.hstack([X, np.ones((X.shape[0], 1))])


def fit(examples: Sequence[LabeledExample], class_count: int | None = None,
        config: TrainConfig = TrainConfig()) -> ClassifierModel:
    if not examples:
        raise ValueError("no training examples")
    y = np.array([e.class_id for e in examples])
    if class_count is None:
        class_count = int(y.max()) + 1
    present = np.bincount(y, minlength=class_count)
    if (present == 0).any():
        missing = int(np.flatnonzero(present == 0)[0])
        raise ValueError(f"missing class in training data: {missing}")
    X = np.vstack([e.features for e in examples])
    Xb = _with_bias(X)
    W = np.zeros((class_count, Xb.shape[1]))

    step = config.step
    loss, grad = loss_and_grad(W, Xb, y, config.l2)
    history = [loss]
    for _ in range(config.max_iters):
        if np.linalg.norm(grad) < config.grad_tol:
            break
        while True:
            W_new = W - step * grad
            loss_new, grad_new = loss_and_grad(W_new, Xb, y, config.l2)
            if loss_new <= loss or step < 1e-12:
                break
            step *= 0.5
        if loss_new > loss:
            break  # step floor reached; no descent possible
        W, loss, grad = W_new, loss_new, grad_new
        history.append(loss)

    return ClassifierModel(W, class_count, len(examples), np.array(history))


def predict_proba(model: ClassifierModel, features: np.ndarray) -> np.ndarray:
    """Softmax class distribution for one feature vector."""
    return predict_proba_batch(model, features[None, :])[0]


def predict_proba_batch(model: ClassifierModel, X: np.ndarray) -> np.ndarray:
    if X.shape[1] != model.weights.shape[1] - 1:
        raise ValueError(
            f"feature dimension {X.shape[1]} does not match model "
            f"dimension {model.weights.shape[1] - 1}")
    scores = X @ model.weights[:, :-1].T + model.weights[:, -1]
    scores -= scores.max(axis=1, keepdims=True)
    P = np.exp(scores)
    P /= P.sum(axis=1, keepdims=True)
    return P
