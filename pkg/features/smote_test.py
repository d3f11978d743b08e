"""Tests for the smote module."""
# pylint: disable=missing-docstring

import unittest

import numpy as np

from features.smote import class_weights
from features.smote import smote_oversample
from testing.fixtures import two_cluster_points


def _on_some_segment(point, members):
    """Whether ``point`` lies on a segment between two of ``members``."""
    for a in members:
        for b in members:
            direction = b - a
            length = direction.dot(direction)
            if length == 0.0:
                if np.abs(point - a).max() <= 1e-12:
                    return True
                continue
            u = (point - a).dot(direction) / length
            if -1e-12 <= u <= 1 + 1e-12 \
                    and np.abs(a + u * direction - point).max() <= 1e-12:
                return True
    return False


class TestSmoteOversample(unittest.TestCase):
    """Tests for smote_oversample."""

    def test_balances_counts(self):
        rng = np.random.RandomState(0)
        rows = rng.randn(100, 3)
        classes = np.array([0] * 70 + [1] * 30)
        new_rows, new_classes = smote_oversample(rows, classes, seed=1)
        self.assertEqual(np.bincount(new_classes).tolist(), [70, 70])
        np.testing.assert_array_equal(new_rows[:100], rows)

    def test_three_classes_uniform(self):
        rng = np.random.RandomState(1)
        rows = rng.randn(60, 3)
        classes = np.array([0] * 35 + [1] * 20 + [2] * 5)
        _, new_classes = smote_oversample(rows, classes, k_neighbors=5,
                                          seed=2)
        self.assertEqual(np.bincount(new_classes).tolist(), [35, 35, 35])

    def test_balanced_unchanged(self):
        rows = np.arange(12.0).reshape(4, 3)
        classes = np.array([0, 1, 0, 1])
        new_rows, new_classes = smote_oversample(rows, classes)
        np.testing.assert_array_equal(new_rows, rows)
        np.testing.assert_array_equal(new_classes, classes)

    def test_synthetic_points_on_segments(self):
        points, classes = two_cluster_points(30, seed=3)
        new_rows, new_classes = smote_oversample(
            points, classes, k_neighbors=3, seed=4, interpolated_columns=2)
        minority = points[classes == 1]
        synthetic = new_rows[len(points):]
        self.assertTrue((new_classes[len(points):] == 1).all())
        for point in synthetic:
            self.assertTrue(_on_some_segment(point, minority))

    def test_one_hot_block_copied(self):
        rng = np.random.RandomState(5)
        topics = np.eye(3)[rng.randint(3, size=20)]
        rows = np.hstack([rng.randn(20, 3), topics])
        classes = np.array([0] * 15 + [1] * 5)
        new_rows, _ = smote_oversample(rows, classes, seed=6)
        minority_blocks = set(tuple(row) for row in rows[15:, 3:])
        for row in new_rows[20:]:
            self.assertEqual(row[3:].sum(), 1.0)
            self.assertIn(tuple(row[3:]), minority_blocks)

    def test_deterministic(self):
        points, classes = two_cluster_points(40, seed=7)
        first = smote_oversample(points, classes, seed=9)
        second = smote_oversample(points, classes, seed=9)
        np.testing.assert_array_equal(first[0], second[0])

    def test_single_member_duplicated(self):
        rows = np.array([[0.0, 0.0, 0.0]] * 3 + [[1.0, 2.0, 3.0]])
        classes = np.array([0, 0, 0, 1])
        with self.assertLogs("features.smote", level="WARNING"):
            new_rows, new_classes = smote_oversample(rows, classes)
        self.assertEqual(np.bincount(new_classes).tolist(), [3, 3])
        np.testing.assert_array_equal(new_rows[4:], [[1.0, 2.0, 3.0]] * 2)


class TestClassWeights(unittest.TestCase):
    """Tests for class_weights."""

    def test_inverse_frequency(self):
        weights = class_weights([0, 0, 0, 1])
        np.testing.assert_allclose(weights, [4 / 6.0] * 3 + [2.0])
        self.assertAlmostEqual(weights.sum(), 4.0, 12)
