"""Tests for the kmeans module."""
# pylint: disable=missing-docstring

import unittest

import numpy as np

from errors import DataError
from testing.fixtures import two_cluster_points
from topics.kmeans import MAX_ITERATIONS
from topics.kmeans import kmeans
from topics.kmeans import squared_distances


class TestKMeans(unittest.TestCase):
    """Tests for kmeans."""

    def setUp(self):
        self.points, self.classes = two_cluster_points(60, offset=10.0)

    def test_separated_blobs(self):
        result = kmeans(self.points, 2, seed=1)
        # Same partition up to renaming the clusters.
        self.assertEqual(len(set(zip(result.labels, self.classes))), 2)
        self.assertEqual(sorted(set(result.labels)), [0, 1])

    def test_deterministic(self):
        first = kmeans(self.points, 3, seed=5)
        second = kmeans(self.points, 3, seed=5)
        np.testing.assert_array_equal(first.centroids, second.centroids)
        np.testing.assert_array_equal(first.labels, second.labels)

    def test_objective_non_increasing(self):
        rng = np.random.RandomState(2)
        result = kmeans(rng.randn(200, 5), 6, seed=2)
        history = result.objective_history
        for before, after in zip(history, history[1:]):
            self.assertLessEqual(after, before * (1 + 1e-12))
        self.assertLessEqual(result.iterations, MAX_ITERATIONS)

    def test_one_point_per_cluster(self):
        points = np.eye(5)
        result = kmeans(points, 5, seed=0)
        self.assertEqual(sorted(result.labels), [0, 1, 2, 3, 4])
        self.assertAlmostEqual(result.objective_history[-1], 0.0, 12)

    def test_too_few_points(self):
        with self.assertRaises(DataError):
            kmeans(np.eye(3), 4, seed=0)

    def test_duplicate_points_reseeded(self):
        points = np.vstack([np.zeros((5, 2)), np.ones((5, 2))])
        result = kmeans(points, 2, seed=3)
        self.assertEqual(sorted(set(result.labels)), [0, 1])


class TestSquaredDistances(unittest.TestCase):
    """Tests for squared_distances."""

    def test_single_row_matches_batch(self):
        rng = np.random.RandomState(8)
        points, centroids = rng.randn(50, 7), rng.randn(4, 7)
        batch = squared_distances(points, centroids)
        for row, point in enumerate(points):
            np.testing.assert_array_equal(
                squared_distances(point[np.newaxis, :], centroids)[0],
                batch[row])
        self.assertAlmostEqual(
            batch[3, 2], ((points[3] - centroids[2]) ** 2).sum(), 12)
