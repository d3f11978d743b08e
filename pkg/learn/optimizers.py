"""In-place parameter update rules."""

import numpy as np


class SGD(object):

    def __init__(self, learning_rate):
        self.learning_rate = learning_rate

    def step(self, weights, grad):
        weights -= self.learning_rate * grad


class Adam(object):
    """Adam with bias-corrected first and second moment estimates."""

    def __init__(self, learning_rate, size, beta1=0.9, beta2=0.999,
                 epsilon=1e-8):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self._first = np.zeros(size)
        self._second = np.zeros(size)
        self._steps = 0

    def step(self, weights, grad):
        self._steps += 1
        self._first = self.beta1 * self._first + (1.0 - self.beta1) * grad
        self._second = self.beta2 * self._second \
            + (1.0 - self.beta2) * grad ** 2
        first = self._first / (1.0 - self.beta1 ** self._steps)
        second = self._second / (1.0 - self.beta2 ** self._steps)
        weights -= self.learning_rate * first / (np.sqrt(second)
                                                 + self.epsilon)
