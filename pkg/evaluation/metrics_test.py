"""Tests for the metrics module."""
# pylint: disable=missing-docstring

import unittest

import numpy as np

from errors import DataError
from evaluation.metrics import ConfusionMatrix
from evaluation.metrics import classification_report
from evaluation.metrics import confusion
from evaluation.metrics import r_squared
from evaluation.metrics import regression_report


def _brute_force(counts):
    """Weighted precision, recall, F1 and accuracy computed cell by cell."""
    size = len(counts)
    total = float(sum(sum(row) for row in counts))
    precision = recall = f1 = 0.0
    for i in range(size):
        tp = counts[i][i]
        fn = sum(counts[i]) - tp
        fp = sum(counts[j][i] for j in range(size)) - tp
        p_i = tp / float(tp + fp) if tp + fp else 0.0
        r_i = tp / float(tp + fn) if tp + fn else 0.0
        f_i = 2 * p_i * r_i / (p_i + r_i) if p_i + r_i else 0.0
        weight = sum(counts[i]) / total
        precision += weight * p_i
        recall += weight * r_i
        f1 += weight * f_i
    accuracy = sum(counts[i][i] for i in range(size)) / total
    return precision, recall, f1, accuracy


class TestConfusion(unittest.TestCase):
    """Tests for confusion."""

    def test_perfect(self):
        matrix = confusion(["a", "b", "c", "b"], ["a", "b", "c", "b"],
                           ["a", "b", "c"])
        np.testing.assert_array_equal(matrix.counts, np.diag([1, 2, 1]))
        self.assertEqual(matrix.total, 4)

    def test_single_predicted_class(self):
        matrix = confusion(["a", "b", "c", "b"], ["a"] * 4, ["a", "b", "c"])
        self.assertEqual(matrix.counts[:, 0].tolist(), [1, 2, 1])
        self.assertEqual(matrix.counts[:, 1:].sum(), 0)

    def test_tally_oracle(self):
        rng = np.random.RandomState(0)
        classes = ["FIXED", "WONTFIX", "INVALID", "DUPLICATE"]
        true = [classes[i] for i in rng.randint(0, 4, 1000)]
        predicted = [classes[i] for i in rng.randint(0, 4, 1000)]
        matrix = confusion(true, predicted, classes)
        for i, row_label in enumerate(classes):
            for j, column_label in enumerate(classes):
                tally = sum(1 for t, p in zip(true, predicted)
                            if t == row_label and p == column_label)
                self.assertEqual(matrix.counts[i, j], tally)

    def test_unknown_label(self):
        with self.assertRaises(DataError) as context:
            confusion(["a", "z"], ["a", "a"], ["a", "b"])
        self.assertIn("'z'", str(context.exception))

    def test_length_mismatch(self):
        with self.assertRaises(DataError):
            confusion(["a"], ["a", "b"], ["a", "b"])


class TestClassificationReport(unittest.TestCase):
    """Tests for classification_report."""

    def test_hand_computed_binary(self):
        # TP=2, FN=1, FP=0, TN=1 with the positive class first.
        report = classification_report(
            ConfusionMatrix(["short", "long"], [[2, 1], [0, 1]]))
        self.assertAlmostEqual(report.precision, 0.875, 12)
        self.assertAlmostEqual(report.recall, 0.75, 12)
        self.assertAlmostEqual(report.f1, 0.7666666666666667, 12)
        self.assertAlmostEqual(report.accuracy, 0.75, 12)
        self.assertEqual(report.total, 4)
        self.assertEqual([metrics.support for metrics in report.per_class],
                         [3, 1])

    def test_diagonal(self):
        report = classification_report(
            ConfusionMatrix(["a", "b", "c"], np.diag([3, 4, 5])))
        for value in (report.precision, report.recall, report.f1,
                      report.accuracy):
            self.assertEqual(value, 1.0)

    def test_class_never_predicted(self):
        report = classification_report(
            ConfusionMatrix(["a", "b", "c"], [[5, 0, 1], [2, 0, 0],
                                              [0, 0, 3]]))
        self.assertEqual(report.per_class[1].precision, 0.0)
        self.assertEqual(report.per_class[1].f1, 0.0)
        self.assertAlmostEqual(report.per_class[0].precision, 5.0 / 7.0, 12)
        self.assertAlmostEqual(report.per_class[2].recall, 1.0, 12)

    def test_empty_class(self):
        report = classification_report(
            ConfusionMatrix(["a", "b"], [[4, 0], [0, 0]]))
        self.assertEqual(report.per_class[1].support, 0)
        self.assertEqual(report.recall, 1.0)

    def test_random_matrices_against_oracle(self):
        rng = np.random.RandomState(1)
        for _ in range(1000):
            size = rng.randint(2, 8)
            counts = rng.randint(0, 20, (size, size))
            counts[0, 0] += 1
            report = classification_report(
                ConfusionMatrix(range(size), counts))
            precision, recall, f1, accuracy = _brute_force(counts.tolist())
            self.assertAlmostEqual(report.precision, precision, 12)
            self.assertAlmostEqual(report.recall, recall, 12)
            self.assertAlmostEqual(report.f1, f1, 12)
            self.assertAlmostEqual(report.accuracy, accuracy, 12)
            self.assertAlmostEqual(report.recall, report.accuracy, 12)

    def test_invariant_under_class_permutation(self):
        counts = np.array([[5, 2, 1], [1, 7, 0], [3, 0, 2]])
        order = [2, 0, 1]
        first = classification_report(ConfusionMatrix("abc", counts))
        second = classification_report(ConfusionMatrix(
            [("abc")[i] for i in order], counts[np.ix_(order, order)]))
        for name in ("precision", "recall", "f1", "accuracy"):
            self.assertAlmostEqual(getattr(first, name),
                                   getattr(second, name), 12)

    def test_invariant_under_duplication(self):
        counts = np.array([[5, 2], [4, 1]])
        first = classification_report(ConfusionMatrix("ab", counts))
        second = classification_report(ConfusionMatrix("ab", 2 * counts))
        for name in ("precision", "recall", "f1", "accuracy"):
            self.assertAlmostEqual(getattr(first, name),
                                   getattr(second, name), 12)

    def test_weighted_within_per_class_range(self):
        rng = np.random.RandomState(2)
        for _ in range(100):
            counts = rng.randint(1, 10, (3, 3))
            report = classification_report(ConfusionMatrix("abc", counts))
            for name in ("precision", "recall", "f1"):
                values = [getattr(metrics, name)
                          for metrics in report.per_class]
                self.assertLessEqual(min(values) - 1e-12,
                                     getattr(report, name))
                self.assertLessEqual(getattr(report, name),
                                     max(values) + 1e-12)


class TestRegressionReport(unittest.TestCase):
    """Tests for regression_report and r_squared."""

    def test_exact(self):
        report = regression_report([1.0, 5.0, 9.0], [1.0, 5.0, 9.0])
        self.assertEqual(report.mae, 0.0)
        self.assertEqual(report.mse, 0.0)
        self.assertEqual(report.r2, 1.0)
        self.assertEqual(report.n, 3)

    def test_mean_prediction(self):
        truth = np.array([2.0, 4.0, 9.0])
        report = regression_report(truth, np.full(3, truth.mean()))
        self.assertAlmostEqual(report.r2, 0.0, 12)

    def test_formula_oracle(self):
        rng = np.random.RandomState(3)
        truth = rng.exponential(100.0, 100)
        predicted = truth + rng.normal(0.0, 30.0, 100)
        report = regression_report(truth, predicted)
        mae = sum(abs(t - p) for t, p in zip(truth, predicted)) / 100.0
        mse = sum((t - p) ** 2 for t, p in zip(truth, predicted)) / 100.0
        mean = sum(truth) / 100.0
        r2 = 1.0 - sum((t - p) ** 2 for t, p in zip(truth, predicted)) \
            / sum((t - mean) ** 2 for t in truth)
        self.assertLess(abs(report.mae - mae), 1e-9)
        self.assertLess(abs(report.mse - mse), 1e-6)
        self.assertAlmostEqual(report.r2, r2, 12)

    def test_negative_r2(self):
        self.assertLess(r_squared([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]), 0.0)

    def test_zero_variance(self):
        report = regression_report([4.0, 4.0], [3.0, 5.0])
        self.assertIsNone(report.r2)
        self.assertEqual(report.mae, 1.0)

    def test_single_value(self):
        self.assertIsNone(r_squared([4.0], [3.0]))

    def test_empty(self):
        with self.assertRaises(DataError):
            regression_report([], [])


if __name__ == '__main__':
    unittest.main()
