"""Linear epsilon-insensitive support vector regression of resolution hours
on a single feature, used to test whether emotionality relates to
time-to-resolution.
"""

from collections import namedtuple
import logging

import numpy as np

from errors import DataError
from evaluation.metrics import r_squared
from learn.network import ModelKind
from learn.network import ModelSpec
from learn.network import Network
from learn.network import OutputKind
from learn.trainer import TrainedModel
from learn.trainer import data_digest

LOGGER = logging.getLogger(__name__)

SvrFit = namedtuple('SvrFit', ('model', 'slope', 'intercept', 'test_r2',
                               'train_r2', 'scatter_x', 'scatter_y'))


def _standardize(values, name):
    mean = values.mean()
    std = values.std()
    if std == 0.0:
        raise DataError("{} has zero variance over {} training rows; a "
                        "regression line is undefined.".format(
                            name, len(values)))
    return mean, std


def train_svr(train_x, train_y, test_x, test_y, epsilon=0.1, l2=1e-3,  # pylint: disable=too-many-arguments,too-many-locals
              iterations=5000, learning_rate=0.1, decay=0.995,
              feature_name="emotionality"):
    """Fits y = slope * x + intercept under the epsilon-insensitive loss.

    x and y are z-scored on the training rows; the objective
    mean(max(0, |r| - epsilon)) + l2 / 2 * w^2 is minimized by full-batch
    subgradient descent with step ``learning_rate * decay^t``, and the best
    iterate is mapped back to hours.

    Returns:
        SvrFit with the TrainedModel, the line in hours, R^2 of the unclamped
        line on the test and training rows, and the test scatter data.
    """
    train_x = np.asarray(train_x, dtype=np.float64).ravel()
    train_y = np.asarray(train_y, dtype=np.float64).ravel()
    test_x = np.asarray(test_x, dtype=np.float64).ravel()
    test_y = np.asarray(test_y, dtype=np.float64).ravel()
    if len(train_x) < 2:
        raise DataError("SVR needs at least 2 rows; got {}.".format(
            len(train_x)))
    x_mean, x_std = _standardize(train_x, feature_name)
    y_mean = train_y.mean()
    y_std = train_y.std() or 1.0

    spec = ModelSpec(ModelKind.SVR, 1, OutputKind.SCALAR)
    network = Network(spec)
    loss = spec.build_loss(epsilon)
    x = ((train_x - x_mean) / x_std)[:, np.newaxis]
    y = (train_y - y_mean) / y_std

    weights = np.zeros(network.size)
    best_weights, best_value = weights.copy(), np.inf
    history = []
    step = learning_rate
    for _ in range(iterations):
        value, grad = network.loss_and_gradient(weights, x, y, loss, l2=l2)
        history.append(float(value))
        if value < best_value:
            best_value, best_weights = value, weights.copy()
        weights -= step * grad
        step *= decay
    value, _ = network.loss_and_gradient(weights, x, y, loss, l2=l2)
    if value < best_value:
        best_value, best_weights = value, weights.copy()

    # Fold the x scaling into the weights; y scaling stays on the model.
    slope_z, intercept_z = best_weights
    weights = np.array([slope_z / x_std, intercept_z - slope_z * x_mean / x_std])
    manifest = {
        "data_digest": data_digest(train_x, train_y),
        "final_train_loss": float(best_value),
        "rows": len(train_x),
        "epsilon": epsilon,
        "l2": l2,
    }
    model = TrainedModel(spec, weights, float(y_mean), float(y_std), history,
                         manifest, {"feature": feature_name})
    slopes, intercept = model.linear_coefficients()
    slope = float(slopes[0])
    intercept = float(intercept)

    train_r2 = r_squared(train_y, slope * train_x + intercept)
    test_r2 = r_squared(test_y, slope * test_x + intercept)
    LOGGER.info("SVR line: hours = %.4f * %s + %.4f; test R^2 %s.", slope,
                feature_name, intercept, test_r2)
    return SvrFit(model, slope, intercept, test_r2, train_r2, test_x, test_y)
