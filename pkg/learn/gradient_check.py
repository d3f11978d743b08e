"""Finite-difference validation of the analytic gradients of a Network."""

import logging

import numpy as np

from learn.layers import ReLU
from learn.network import ModelKind
from learn.network import Network

LOGGER = logging.getLogger(__name__)

STEP = 1e-5
KINK_MARGIN = 1e-3
MAX_DRAWS = 200


def relative_error(analytic, numeric):
    """|a - n| / max(|a| + |n|, 1e-5), elementwise."""
    return np.abs(analytic - numeric) / np.maximum(
        np.abs(analytic) + np.abs(numeric), 1e-5)


def _random_targets(spec, rng, batch_size):
    if spec.is_classifier:
        return rng.randint(0, spec.class_count, batch_size)
    return rng.normal(0.0, 1.0, batch_size)


def _near_kink(network, weights, x, targets, epsilon):
    outputs, caches = network.forward(weights, x)
    for layer, cache in zip(network.layers, caches):
        if isinstance(layer, ReLU) and (np.abs(cache) < KINK_MARGIN).any():
            return True
    if network.spec.kind == ModelKind.SVR:
        residual = np.abs(outputs[:, 0] - targets)
        if (np.abs(residual - epsilon) < KINK_MARGIN).any():
            return True
    return False


def gradient_check(spec, seed, batch_size=6, zero_inputs=False,  # pylint: disable=too-many-arguments,too-many-locals
                   epsilon=0.1, l2=1e-3):
    """Compares back-propagated gradients of the model's training loss with
    central finite differences over every parameter.

    Parameters, inputs and targets are drawn from ``seed``; draws that put a
    ReLU pre-activation or an SVR residual next to a kink are rejected.

    Args:
        spec: ModelSpec of a small network.
        seed: Random seed.
        batch_size: Rows in the batch.
        zero_inputs: Use an all-zero input batch.
        epsilon: SVR tube width.
        l2: L2 penalty, applied to SVR only.

    Returns:
        Maximum relative error over all parameters.
    """
    assert batch_size <= 8 and spec.input_size <= 16
    rng = np.random.RandomState(seed)
    network = Network(spec)
    loss = spec.build_loss(epsilon)
    l2 = l2 if spec.kind == ModelKind.SVR else 0.0

    for _ in range(MAX_DRAWS):
        weights = rng.uniform(-1.0, 1.0, network.size)
        if zero_inputs:
            x = np.zeros((batch_size, spec.input_size))
        else:
            x = rng.uniform(-1.0, 1.0, (batch_size, spec.input_size))
        targets = _random_targets(spec, rng, batch_size)
        if not _near_kink(network, weights, x, targets, epsilon):
            break
    else:
        LOGGER.warning("Every draw for seed %s lies near a kink.", seed)

    _, analytic = network.loss_and_gradient(weights, x, targets, loss, l2=l2)
    numeric = np.zeros(network.size)
    for index in range(network.size):
        original = weights[index]
        weights[index] = original + STEP
        plus, _ = network.loss_and_gradient(weights, x, targets, loss, l2=l2)
        weights[index] = original - STEP
        minus, _ = network.loss_and_gradient(weights, x, targets, loss, l2=l2)
        weights[index] = original
        numeric[index] = (plus - minus) / (2.0 * STEP)

    if not np.isfinite(analytic).all():
        return float('nan')
    error = float(relative_error(analytic, numeric).max())
    LOGGER.debug("Gradient check of %s seed %s: max relative error %.3g.",
                 spec.kind.value, seed, error)
    return error
