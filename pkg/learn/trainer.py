"""Mini-batch training and prediction."""

from enum import Enum
import logging

import numpy as np

from errors import ConfigurationError
from errors import DataError
from errors import TrainingError
from learn.losses import sigmoid
from learn.losses import softmax
from learn.network import ModelKind
from learn.network import Network
from learn.network import OutputKind
from learn.optimizers import SGD
from learn.optimizers import Adam
from utils import canonical_json
from utils import digest

LOGGER = logging.getLogger(__name__)


class OptimizerKind(Enum):
    SGD = "SGD"
    ADAM = "ADAM"


class TrainConfig(object):
    """Training hyperparameters.

    Attributes:
        epochs: Passes over the training rows.
        batch_size: Rows per update.
        learning_rate: Step size.
        optimizer: An ``OptimizerKind``.
        seed: Seed for initialization and batch order.
        svr_epsilon: Tube width of the SVR loss.
        svr_l2: L2 penalty of SVR weights.
        standardize_targets: Train regressors on z-scored targets.
    """

    def __init__(self, epochs=50, batch_size=64, learning_rate=1e-3,  # pylint: disable=too-many-arguments
                 optimizer=OptimizerKind.ADAM, seed=42, svr_epsilon=0.1,
                 svr_l2=1e-3, standardize_targets=True):
        if epochs < 1:
            raise ConfigurationError("epochs must be at least 1; got "
                                     "{}.".format(epochs))
        if learning_rate <= 0.0:
            raise ConfigurationError("learning_rate must be positive; got "
                                     "{}.".format(learning_rate))
        if batch_size < 1:
            raise ConfigurationError("batch_size must be at least 1; got "
                                     "{}.".format(batch_size))
        self.epochs = epochs
        self.batch_size = batch_size
        self.learning_rate = learning_rate
        self.optimizer = optimizer
        self.seed = seed
        self.svr_epsilon = svr_epsilon
        self.svr_l2 = svr_l2
        self.standardize_targets = standardize_targets

    @classmethod
    def from_json(cls, configuration, seed=42):
        """Factory for creating a TrainConfig from the "train" section of a
        run configuration.
        """
        configuration = dict(configuration or {})
        try:
            optimizer = OptimizerKind(configuration.pop("optimizer", "ADAM"))
        except ValueError:
            raise ConfigurationError("Unknown optimizer.")
        configuration.setdefault("seed", seed)
        try:
            return cls(optimizer=optimizer, **configuration)
        except TypeError as error:
            raise ConfigurationError("Bad train section: {}".format(error))

    def to_json(self):
        return {
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "optimizer": self.optimizer.value,
            "seed": self.seed,
            "svr_epsilon": self.svr_epsilon,
            "svr_l2": self.svr_l2,
            "standardize_targets": self.standardize_targets,
        }


class TrainedModel(object):
    """A trained network.

    Attributes:
        spec: The ModelSpec.
        weights: Flat weight array laid out by ``Network.offsets``.
        target_mean, target_std: Scaling undone on regression outputs.
        loss_history: Full training loss after every epoch.
        train_manifest: Config, data and feature digests plus the final
            training loss.
        metadata: JSON-serializable description of the feature pipeline the
            model expects.
    """

    def __init__(self, spec, weights, target_mean=0.0, target_std=1.0,  # pylint: disable=too-many-arguments
                 loss_history=(), train_manifest=None, metadata=None):
        self.spec = spec
        self.network = Network(spec)
        self.weights = np.asarray(weights, dtype=np.float64)
        assert len(self.weights) == self.network.size, \
            "Expected {} weights, got {}.".format(self.network.size,
                                                  len(self.weights))
        self.target_mean = target_mean
        self.target_std = target_std
        self.loss_history = list(loss_history)
        self.train_manifest = dict(train_manifest or {})
        self.metadata = dict(metadata or {})

    def linear_coefficients(self):
        """(slopes, intercept) of a LINREG or SVR model in target units."""
        assert self.spec.kind in (ModelKind.LINREG, ModelKind.SVR)
        slopes = self.weights[:-1] * self.target_std
        intercept = self.weights[-1] * self.target_std + self.target_mean
        return slopes, intercept


def _optimizer(config, size):
    if config.optimizer == OptimizerKind.SGD:
        return SGD(config.learning_rate)
    return Adam(config.learning_rate, size)


def _check_targets(spec, targets):
    if spec.is_classifier:
        targets = np.asarray(targets, dtype=int)
        if targets.min() < 0 or targets.max() >= spec.class_count:
            raise DataError("Class targets must lie in [0, {}).".format(
                spec.class_count))
        return targets
    targets = np.asarray(targets, dtype=np.float64)
    if not np.isfinite(targets).all():
        raise DataError("Regression targets must be finite.")
    return targets


def data_digest(rows, targets):
    return digest(np.ascontiguousarray(rows, dtype='<f8').tobytes(),
                  np.ascontiguousarray(targets, dtype='<f8').tobytes())


def train(spec, config, rows, targets, sample_weights=None, metadata=None):  # pylint: disable=too-many-arguments,too-many-locals
    """Trains a model of ``spec`` on ``rows``.

    Args:
        spec: The ModelSpec.
        config: The TrainConfig.
        rows: N x input_size feature matrix.
        targets: Class ids for classifiers, real values for regressors.
        sample_weights: Optional per-row loss weights.
        metadata: Feature pipeline description stored on the model.

    Returns:
        TrainedModel.
    """
    rows = np.asarray(rows, dtype=np.float64)
    if len(rows) < 2:
        raise DataError("Training needs at least 2 rows; got {}.".format(
            len(rows)))
    if rows.shape[1] != spec.input_size:
        raise DataError("Rows have {} features; the model expects {}.".format(
            rows.shape[1], spec.input_size))
    targets = _check_targets(spec, targets)

    target_mean, target_std = 0.0, 1.0
    fit_targets = targets
    if not spec.is_classifier and config.standardize_targets:
        target_mean = float(targets.mean())
        target_std = float(targets.std()) or 1.0
        fit_targets = (targets - target_mean) / target_std

    rng = np.random.RandomState(config.seed)
    network = Network(spec)
    weights = network.initialize(rng)
    loss = spec.build_loss(config.svr_epsilon)
    l2 = config.svr_l2 if spec.kind == ModelKind.SVR else 0.0
    optimizer = _optimizer(config, network.size)
    if sample_weights is not None:
        sample_weights = np.asarray(sample_weights, dtype=np.float64)

    history = []
    for epoch in range(config.epochs):
        order = rng.permutation(len(rows))
        for start in range(0, len(rows), config.batch_size):
            batch = order[start:start + config.batch_size]
            _, grad = network.loss_and_gradient(
                weights, rows[batch], fit_targets[batch], loss,
                None if sample_weights is None else sample_weights[batch], l2)
            optimizer.step(weights, grad)

        value, _ = network.loss_and_gradient(
            weights, rows, fit_targets, loss, sample_weights, l2)
        if not np.isfinite(value):
            raise TrainingError(
                "Training loss became {} at epoch {} with learning rate {}; "
                "try a smaller learning_rate.".format(
                    value, epoch + 1, config.learning_rate))
        history.append(float(value))
        LOGGER.debug("Epoch %d/%d loss %.6f.", epoch + 1, config.epochs,
                     value)

    manifest = {
        "config_digest": digest(canonical_json(config.to_json())),
        "spec_digest": digest(canonical_json(spec.to_json())),
        "feature_digest": digest(canonical_json(metadata or {})),
        "data_digest": data_digest(rows, targets),
        "final_train_loss": history[-1],
        "rows": len(rows),
    }
    LOGGER.info("Trained %s on %d rows; final loss %.6f.", spec.kind.value,
                len(rows), history[-1])
    return TrainedModel(spec, weights, target_mean, target_std, history,
                        manifest, metadata)


def _outputs(model, rows):
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim == 1:
        rows = rows[np.newaxis, :]
    if rows.shape[1] != model.spec.input_size:
        raise DataError("Row has {} features; the model expects {}.".format(
            rows.shape[1], model.spec.input_size))
    outputs, _ = model.network.forward(model.weights, rows)
    return outputs


def predict(model, rows):
    """Class distributions (N x classes) for classifiers, or hours (N,)
    clamped at zero for regressors.
    """
    outputs = _outputs(model, rows)
    if model.spec.output == OutputKind.MULTICLASS:
        return softmax(outputs)
    if model.spec.output == OutputKind.BINARY:
        positive = sigmoid(outputs[:, 0])
        return np.column_stack([1.0 - positive, positive])
    values = outputs[:, 0] * model.target_std + model.target_mean
    return np.maximum(values, 0.0)


def predict_classes(model, rows):
    """Most probable class id of each row."""
    assert model.spec.is_classifier
    return np.argmax(predict(model, rows), axis=1)
