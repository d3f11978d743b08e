"""Confusion matrices, weighted classification metrics and regression error
metrics.

Per-class precision, recall and F1 follow the usual definitions with every
0/0 cell defined as 0. Weighted aggregates weight class i by T_i / T, its
share of the true instances.
"""

from collections import namedtuple
import logging

import numpy as np
from sklearn.metrics import confusion_matrix
from sklearn.metrics import mean_absolute_error
from sklearn.metrics import mean_squared_error

from errors import DataError

LOGGER = logging.getLogger(__name__)


class ConfusionMatrix(object):
    """Counts of (true, predicted) pairs.

    Attributes:
        classes: Ordered labels.
        counts: len(classes) x len(classes) integer array; rows are true
            labels and columns predicted labels.
    """

    def __init__(self, classes, counts):
        self.classes = tuple(classes)
        self.counts = np.asarray(counts, dtype=np.int64)
        assert self.counts.shape == (len(self.classes), len(self.classes))
        assert (self.counts >= 0).all()

    @property
    def total(self):
        return int(self.counts.sum())

    def to_json(self):
        return {
            "classes": [str(label) for label in self.classes],
            "counts": self.counts.tolist(),
        }


def confusion(true_labels, predicted_labels, classes):
    """Tallies (true, predicted) pairs over ``classes``.

    Raises:
        DataError: The sequences differ in length or hold a label outside
            ``classes``.
    """
    true_labels = list(true_labels)
    predicted_labels = list(predicted_labels)
    if len(true_labels) != len(predicted_labels):
        raise DataError("Got {} true labels but {} predictions.".format(
            len(true_labels), len(predicted_labels)))
    index = {label: position for position, label in enumerate(classes)}
    for label in true_labels + predicted_labels:
        if label not in index:
            raise DataError("Unknown label {!r}; expected one of {}.".format(
                label, list(classes)))
    if not true_labels:
        return ConfusionMatrix(classes, np.zeros((len(classes),
                                                  len(classes))))
    counts = confusion_matrix([index[label] for label in true_labels],
                              [index[label] for label in predicted_labels],
                              labels=list(range(len(classes))))
    return ConfusionMatrix(classes, counts)


ClassMetrics = namedtuple('ClassMetrics',
                          ('label', 'precision', 'recall', 'f1', 'support'))


def _ratio(numerator, denominator):
    """Elementwise numerator / denominator with 0 where the denominator is 0.
    """
    numerator = np.asarray(numerator, dtype=np.float64)
    denominator = np.asarray(denominator, dtype=np.float64)
    out = np.zeros_like(numerator)
    np.divide(numerator, denominator, out=out, where=denominator != 0)
    return out


class ClassificationReport(object):
    """Per-class and support-weighted precision, recall and F1, plus accuracy.

    Attributes:
        per_class: ClassMetrics for each class in confusion matrix order.
        precision, recall, f1: Support-weighted aggregates.
        accuracy: Correct predictions over total.
        total: Number of evaluated examples.
    """

    def __init__(self, per_class, precision, recall, f1, accuracy, total):  # pylint: disable=too-many-arguments
        self.per_class = per_class
        self.precision = precision
        self.recall = recall
        self.f1 = f1
        self.accuracy = accuracy
        self.total = total

    def to_json(self):
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "total": self.total,
            "per_class": [{
                "label": str(metrics.label),
                "precision": metrics.precision,
                "recall": metrics.recall,
                "f1": metrics.f1,
                "support": metrics.support,
            } for metrics in self.per_class],
        }


def classification_report(matrix):
    """Derives a ClassificationReport from a ConfusionMatrix."""
    counts = matrix.counts.astype(np.float64)
    total = counts.sum()
    assert total > 0, "Cannot report on an empty confusion matrix."

    true_positives = np.diag(counts)
    support = counts.sum(axis=1)
    precision = _ratio(true_positives, counts.sum(axis=0))
    recall = _ratio(true_positives, support)
    f1 = _ratio(2.0 * precision * recall, precision + recall)

    weights = support / total
    per_class = [ClassMetrics(label, float(precision[i]), float(recall[i]),
                              float(f1[i]), int(support[i]))
                 for i, label in enumerate(matrix.classes)]
    return ClassificationReport(
        per_class,
        float(weights.dot(precision)),
        float(weights.dot(recall)),
        float(weights.dot(f1)),
        float(true_positives.sum() / total),
        int(total))


def r_squared(true_values, predicted_values):
    """1 - SS_res / SS_tot about the mean of ``true_values``; None when the
    true values have no variance or fewer than two are given.
    """
    true_values = np.asarray(true_values, dtype=np.float64)
    predicted_values = np.asarray(predicted_values, dtype=np.float64)
    if len(true_values) < 2:
        return None
    total = ((true_values - true_values.mean()) ** 2).sum()
    if total == 0.0:
        return None
    residual = ((true_values - predicted_values) ** 2).sum()
    return float(1.0 - residual / total)


class RegressionReport(object):
    """Error of duration predictions in hours.

    Attributes:
        mae: Mean absolute error.
        mse: Mean squared error.
        r2: Coefficient of determination, or None when undefined.
        n: Number of evaluated examples.
    """

    def __init__(self, mae, mse, r2, n):
        self.mae = mae
        self.mse = mse
        self.r2 = r2
        self.n = n

    def to_json(self):
        return {"mae": self.mae, "mse": self.mse, "r2": self.r2, "n": self.n}


def regression_report(true_hours, predicted_hours):
    true_hours = np.asarray(true_hours, dtype=np.float64)
    predicted_hours = np.asarray(predicted_hours, dtype=np.float64)
    if len(true_hours) != len(predicted_hours):
        raise DataError("Got {} true values but {} predictions.".format(
            len(true_hours), len(predicted_hours)))
    if true_hours.size == 0:
        raise DataError("Cannot report on zero predictions.")
    r2 = r_squared(true_hours, predicted_hours)
    if r2 is None:
        LOGGER.warning("R^2 undefined for %d true values without variance.",
                       len(true_hours))
    return RegressionReport(
        float(mean_absolute_error(true_hours, predicted_hours)),
        float(mean_squared_error(true_hours, predicted_hours)),
        r2, len(true_hours))
