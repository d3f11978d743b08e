"""Model architectures and the flat-weight network that evaluates them."""

from enum import Enum

import numpy as np

from errors import ConfigurationError
from learn.layers import Conv1D
from learn.layers import Dense
from learn.layers import Flatten
from learn.layers import ReLU
from learn.losses import EpsilonInsensitive
from learn.losses import MeanSquaredError
from learn.losses import SigmoidCrossEntropy
from learn.losses import SoftmaxCrossEntropy


class ModelKind(Enum):
    MLP = "MLP"
    CNN1D = "CNN1D"
    LINREG = "LINREG"
    LOGREG = "LOGREG"
    SVR = "SVR"


class OutputKind(Enum):
    BINARY = "BINARY"
    MULTICLASS = "MULTICLASS"
    SCALAR = "SCALAR"


class ModelSpec(object):
    """Architecture descriptor.

    Attributes:
        kind: A ``ModelKind``.
        input_size: Feature vector length.
        output: An ``OutputKind``.
        classes: Class count for MULTICLASS output.
        hidden: Hidden layer widths of an MLP.
        filters, kernel, stride: Convolution of a CNN1D.
    """

    def __init__(self, kind, input_size, output, classes=None,  # pylint: disable=too-many-arguments
                 hidden=(32, 16), filters=16, kernel=2, stride=1):
        self.kind = kind
        self.input_size = input_size
        self.output = output
        self.classes = classes
        self.hidden = tuple(hidden)
        self.filters = filters
        self.kernel = kernel
        self.stride = stride
        self._validate()

    def _validate(self):
        if self.input_size < 1:
            raise ConfigurationError("Models need at least one input.")
        if self.output == OutputKind.MULTICLASS and (
                self.classes is None or self.classes < 2):
            raise ConfigurationError(
                "MULTICLASS output needs at least 2 classes; got {}.".format(
                    self.classes))
        if self.kind == ModelKind.CNN1D and self.kernel > self.input_size:
            raise ConfigurationError(
                "Convolution kernel {} is longer than the {} inputs.".format(
                    self.kernel, self.input_size))
        if self.kind in (ModelKind.LINREG, ModelKind.SVR) \
                and self.output != OutputKind.SCALAR:
            raise ConfigurationError("{} models have SCALAR output.".format(
                self.kind.value))
        if self.kind == ModelKind.LOGREG \
                and self.output == OutputKind.SCALAR:
            raise ConfigurationError("LOGREG models classify.")

    @property
    def output_units(self):
        if self.output == OutputKind.MULTICLASS:
            return self.classes
        return 1

    @property
    def is_classifier(self):
        return self.output != OutputKind.SCALAR

    @property
    def class_count(self):
        """Classes predicted; 2 for BINARY, None for SCALAR output."""
        if self.output == OutputKind.MULTICLASS:
            return self.classes
        if self.output == OutputKind.BINARY:
            return 2
        return None

    def build_layers(self):
        units = self.output_units
        if self.kind == ModelKind.MLP:
            layers = []
            width = self.input_size
            for hidden in self.hidden:
                layers += [Dense(width, hidden), ReLU()]
                width = hidden
            return layers + [Dense(width, units)]
        if self.kind == ModelKind.CNN1D:
            conv = Conv1D(self.input_size, self.filters, self.kernel,
                          self.stride)
            return [conv, ReLU(), Flatten(),
                    Dense(conv.positions * self.filters, units)]
        return [Dense(self.input_size, units)]

    def build_loss(self, epsilon=0.1):
        if self.kind == ModelKind.SVR:
            return EpsilonInsensitive(epsilon)
        if self.output == OutputKind.MULTICLASS:
            return SoftmaxCrossEntropy()
        if self.output == OutputKind.BINARY:
            return SigmoidCrossEntropy()
        return MeanSquaredError()

    def to_json(self):
        return {
            "kind": self.kind.value,
            "input_size": self.input_size,
            "output": self.output.value,
            "classes": self.classes,
            "hidden": list(self.hidden),
            "filters": self.filters,
            "kernel": self.kernel,
            "stride": self.stride,
        }

    @classmethod
    def from_json(cls, configuration):
        return cls(ModelKind(configuration["kind"]),
                   configuration["input_size"],
                   OutputKind(configuration["output"]),
                   classes=configuration.get("classes"),
                   hidden=configuration.get("hidden", (32, 16)),
                   filters=configuration.get("filters", 16),
                   kernel=configuration.get("kernel", 2),
                   stride=configuration.get("stride", 1))


class Network(object):
    """Layers of a ModelSpec over one flat weight array.

    Attributes:
        spec: The ModelSpec.
        layers: Layer objects, input first.
        offsets: Start of each layer's slice in the weight array.
        size: Total parameter count.
    """

    def __init__(self, spec):
        self.spec = spec
        self.layers = spec.build_layers()
        self.offsets = np.cumsum([0] + [layer.param_count
                                        for layer in self.layers])
        self.size = int(self.offsets[-1])

    def _params(self, weights, index):
        return weights[self.offsets[index]:self.offsets[index + 1]]

    def initialize(self, rng):
        """He-uniform weights and zero biases from ``rng``."""
        return np.concatenate([layer.initialize(rng)
                               for layer in self.layers])

    def penalty_mask(self):
        return np.concatenate([layer.penalty_mask() for layer in self.layers])

    def forward(self, weights, x):
        """(outputs, caches) for a batch ``x``."""
        assert len(weights) == self.size
        caches = []
        for index, layer in enumerate(self.layers):
            x, cache = layer.forward(x, self._params(weights, index))
            caches.append(cache)
        return x, caches

    def backward(self, weights, dout, caches):
        """Gradient of the flat weights given d(loss)/d(outputs)."""
        grad = np.zeros(self.size)
        for index in reversed(range(len(self.layers))):
            dout, layer_grad = self.layers[index].backward(
                dout, caches[index], self._params(weights, index))
            grad[self.offsets[index]:self.offsets[index + 1]] = layer_grad
        return grad

    def loss_and_gradient(self, weights, x, targets, loss, sample_weights=None,  # pylint: disable=too-many-arguments
                          l2=0.0):
        """Mean loss plus l2 / 2 * |penalized weights|^2, and its gradient."""
        outputs, caches = self.forward(weights, x)
        value, dout = loss(outputs, targets, sample_weights)
        grad = self.backward(weights, dout, caches)
        if l2:
            mask = self.penalty_mask()
            value += 0.5 * l2 * (weights[mask] ** 2).sum()
            grad[mask] += l2 * weights[mask]
        return value, grad
