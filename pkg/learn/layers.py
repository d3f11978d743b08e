"""Network layers. Parameters live in one flat weight array owned by the
network; each layer reads and writes its slice.

Every layer implements:
    forward(x, params) -> (output, cache)
    backward(dout, cache, params) -> (dx, flat parameter gradient)
"""

import numpy as np


class Layer(object):
    """Base class for a layer without parameters."""

    param_count = 0

    def initialize(self, rng):  # pylint: disable=unused-argument
        """Initial parameters drawn from ``rng``."""
        return np.zeros(self.param_count)

    def penalty_mask(self):
        """Which parameters an L2 penalty applies to."""
        return np.zeros(self.param_count, dtype=bool)

    def forward(self, x, params):
        raise NotImplementedError()

    def backward(self, dout, cache, params):
        raise NotImplementedError()


class Dense(Layer):
    """Fully connected layer: x @ W + b.

    Attributes:
        inputs: Input width.
        outputs: Output width.
    """

    def __init__(self, inputs, outputs):
        self.inputs = inputs
        self.outputs = outputs
        self.param_count = inputs * outputs + outputs

    def _split(self, params):
        weights = params[:self.inputs * self.outputs].reshape(
            self.inputs, self.outputs)
        return weights, params[self.inputs * self.outputs:]

    def initialize(self, rng):
        """He-uniform weights, zero biases."""
        limit = np.sqrt(6.0 / self.inputs)
        params = np.zeros(self.param_count)
        params[:self.inputs * self.outputs] = rng.uniform(
            -limit, limit, self.inputs * self.outputs)
        return params

    def penalty_mask(self):
        mask = np.zeros(self.param_count, dtype=bool)
        mask[:self.inputs * self.outputs] = True
        return mask

    def forward(self, x, params):
        weights, bias = self._split(params)
        return x.dot(weights) + bias, x

    def backward(self, dout, cache, params):
        weights, _ = self._split(params)
        x = cache
        grad = np.concatenate([x.T.dot(dout).ravel(), dout.sum(axis=0)])
        return dout.dot(weights.T), grad


class ReLU(Layer):

    def forward(self, x, params):
        return np.maximum(x, 0.0), x

    def backward(self, dout, cache, params):
        return dout * (cache > 0.0), np.zeros(0)


class Conv1D(Layer):
    """Single-channel 1-D convolution over the feature vector, computed as a
    matrix product over sliding windows.

    Input is (batch, length); output is (batch, positions, filters).
    """

    def __init__(self, length, filters=16, kernel=2, stride=1):
        assert 1 <= kernel <= length
        self.length = length
        self.filters = filters
        self.kernel = kernel
        self.stride = stride
        self.positions = (length - kernel) // stride + 1
        self.param_count = kernel * filters + filters
        # window[t, j] is the input index read by tap j at position t.
        self._window = (np.arange(self.positions)[:, np.newaxis] * stride
                        + np.arange(kernel)[np.newaxis, :])

    def _split(self, params):
        weights = params[:self.kernel * self.filters].reshape(
            self.kernel, self.filters)
        return weights, params[self.kernel * self.filters:]

    def initialize(self, rng):
        limit = np.sqrt(6.0 / self.kernel)
        params = np.zeros(self.param_count)
        params[:self.kernel * self.filters] = rng.uniform(
            -limit, limit, self.kernel * self.filters)
        return params

    def penalty_mask(self):
        mask = np.zeros(self.param_count, dtype=bool)
        mask[:self.kernel * self.filters] = True
        return mask

    def forward(self, x, params):
        weights, bias = self._split(params)
        columns = x[:, self._window]
        return columns.dot(weights) + bias, (columns, x.shape)

    def backward(self, dout, cache, params):
        weights, _ = self._split(params)
        columns, shape = cache
        grad_weights = np.einsum('btk,btf->kf', columns, dout)
        grad = np.concatenate([grad_weights.ravel(), dout.sum(axis=(0, 1))])
        dcolumns = dout.dot(weights.T)
        dx = np.zeros(shape)
        for tap in range(self.kernel):
            np.add.at(dx, (slice(None), self._window[:, tap]),
                      dcolumns[:, :, tap])
        return dx, grad


class Flatten(Layer):

    def forward(self, x, params):
        return x.reshape(len(x), -1), x.shape

    def backward(self, dout, cache, params):
        return dout.reshape(cache), np.zeros(0)
