"""Tests for the layers module."""
# pylint: disable=missing-docstring

import unittest

import numpy as np

from learn.layers import Conv1D
from learn.layers import Dense
from learn.layers import Flatten
from learn.layers import ReLU


class TestDense(unittest.TestCase):
    """Tests for the Dense layer."""

    def test_forward(self):
        layer = Dense(2, 3)
        params = np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 0.5, 0.0, -0.5])
        out, _ = layer.forward(np.array([[1.0, 1.0]]), params)
        np.testing.assert_allclose(out, [[5.5, 7.0, 8.5]])

    def test_initialize_he_uniform(self):
        layer = Dense(6, 4)
        params = layer.initialize(np.random.RandomState(0))
        self.assertEqual(len(params), 28)
        self.assertTrue((np.abs(params[:24]) <= 1.0).all())
        np.testing.assert_array_equal(params[24:], np.zeros(4))

    def test_penalty_mask_skips_bias(self):
        mask = Dense(3, 2).penalty_mask()
        self.assertEqual(mask.tolist(), [True] * 6 + [False] * 2)


class TestReLU(unittest.TestCase):
    """Tests for the ReLU layer."""

    def test_forward_backward(self):
        layer = ReLU()
        x = np.array([[-1.0, 0.5, 2.0]])
        out, cache = layer.forward(x, None)
        np.testing.assert_array_equal(out, [[0.0, 0.5, 2.0]])
        dx, grad = layer.backward(np.ones((1, 3)), cache, None)
        np.testing.assert_array_equal(dx, [[0.0, 1.0, 1.0]])
        self.assertEqual(grad.size, 0)


class TestConv1D(unittest.TestCase):
    """Tests for the Conv1D layer."""

    def test_positions(self):
        self.assertEqual(Conv1D(5, kernel=2).positions, 4)
        self.assertEqual(Conv1D(5, kernel=3, stride=2).positions, 2)
        self.assertEqual(Conv1D(3, kernel=3).positions, 1)

    def test_forward_matches_loop(self):
        layer = Conv1D(5, filters=3, kernel=2, stride=1)
        rng = np.random.RandomState(1)
        params = rng.randn(layer.param_count)
        x = rng.randn(4, 5)
        out, _ = layer.forward(x, params)
        weights = params[:6].reshape(2, 3)
        bias = params[6:]
        self.assertEqual(out.shape, (4, 4, 3))
        for b in range(4):
            for t in range(4):
                for f in range(3):
                    want = x[b, t] * weights[0, f] \
                        + x[b, t + 1] * weights[1, f] + bias[f]
                    self.assertAlmostEqual(out[b, t, f], want, 12)


class TestFlatten(unittest.TestCase):
    """Tests for the Flatten layer."""

    def test_shapes(self):
        layer = Flatten()
        x = np.arange(24.0).reshape(2, 4, 3)
        out, cache = layer.forward(x, None)
        self.assertEqual(out.shape, (2, 12))
        dx, _ = layer.backward(out, cache, None)
        np.testing.assert_array_equal(dx, x)


if __name__ == '__main__':
    unittest.main()
