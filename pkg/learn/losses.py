"""Training losses. Each is called with network outputs, targets and
optional per-sample weights and returns (mean loss, gradient w.r.t. the
outputs). Sample weights scale each row's term; the mean is over rows.
"""

import numpy as np


def _weights(weights, count):
    if weights is None:
        return np.ones(count)
    return np.asarray(weights, dtype=np.float64)


def softmax(logits):
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def sigmoid(logits):
    return np.exp(-np.logaddexp(0.0, -logits))


class SoftmaxCrossEntropy(object):
    """Multiclass cross-entropy over softmax outputs; integer targets."""

    def __call__(self, outputs, targets, weights=None):
        count = len(outputs)
        weights = _weights(weights, count)
        targets = np.asarray(targets, dtype=int)
        shifted = outputs - outputs.max(axis=1, keepdims=True)
        log_probs = shifted - np.log(np.exp(shifted).sum(axis=1,
                                                         keepdims=True))
        rows = np.arange(count)
        loss = -(weights * log_probs[rows, targets]).sum() / count
        grad = np.exp(log_probs)
        grad[rows, targets] -= 1.0
        return loss, grad * weights[:, np.newaxis] / count


class SigmoidCrossEntropy(object):
    """Binary cross-entropy on a single logit; targets 0 or 1."""

    def __call__(self, outputs, targets, weights=None):
        count = len(outputs)
        weights = _weights(weights, count)
        logits = outputs[:, 0]
        targets = np.asarray(targets, dtype=np.float64)
        loss = (weights * (np.logaddexp(0.0, logits)
                           - targets * logits)).sum() / count
        grad = weights * (sigmoid(logits) - targets) / count
        return loss, grad[:, np.newaxis]


class MeanSquaredError(object):

    def __call__(self, outputs, targets, weights=None):
        count = len(outputs)
        weights = _weights(weights, count)
        residual = outputs[:, 0] - np.asarray(targets, dtype=np.float64)
        loss = (weights * residual ** 2).sum() / count
        grad = 2.0 * weights * residual / count
        return loss, grad[:, np.newaxis]


class EpsilonInsensitive(object):
    """max(0, |residual| - epsilon), the linear SVR loss.

    Attributes:
        epsilon: Width of the zero-loss tube.
    """

    def __init__(self, epsilon=0.1):
        self.epsilon = epsilon

    def __call__(self, outputs, targets, weights=None):
        count = len(outputs)
        weights = _weights(weights, count)
        residual = outputs[:, 0] - np.asarray(targets, dtype=np.float64)
        excess = np.abs(residual) - self.epsilon
        loss = (weights * np.maximum(excess, 0.0)).sum() / count
        grad = weights * np.sign(residual) * (excess > 0.0) / count
        return loss, grad[:, np.newaxis]
