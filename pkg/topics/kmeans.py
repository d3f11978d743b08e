"""Seeded Lloyd k-means with k-means++ initialization."""

from collections import namedtuple
import logging

import numpy as np
from sklearn.cluster import kmeans_plusplus

from errors import DataError

LOGGER = logging.getLogger(__name__)

MAX_ITERATIONS = 300
TOLERANCE = 1e-6

KMeansResult = namedtuple(
    'KMeansResult',
    ('centroids', 'labels', 'iterations', 'objective_history'))


def squared_distances(points, centroids):
    """Squared Euclidean distances as a len(points) x len(centroids) matrix.

    Distances to each centroid are summed row by row so a single point gets
    exactly the value it gets inside a batch.
    """
    distances = np.empty((len(points), len(centroids)))
    for index, centroid in enumerate(centroids):
        distances[:, index] = ((points - centroid) ** 2).sum(axis=1)
    return distances


def nearest(points, centroids):
    """(labels, squared distance to the assigned centroid). Ties go to the
    lowest centroid index.
    """
    distances = squared_distances(points, centroids)
    labels = np.argmin(distances, axis=1)
    return labels, distances[np.arange(len(points)), labels]


def kmeans(points, k, seed, max_iterations=MAX_ITERATIONS,
           tolerance=TOLERANCE):
    """Clusters the rows of ``points``.

    Args:
        points: N x D array, N >= k.
        k: Number of clusters.
        seed: Seed for k-means++ initialization.
        max_iterations: Upper bound on Lloyd iterations.
        tolerance: Stop once no centroid moves farther than this.

    Returns:
        KMeansResult. ``objective_history`` holds the sum of squared
        distances after every assignment step, ending with the final one.
    """
    points = np.asarray(points, dtype=np.float64)
    if len(points) < k:
        raise DataError("Cannot form {} clusters from {} points.".format(
            k, len(points)))

    centroids, _ = kmeans_plusplus(points, k, random_state=seed)
    history = []
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        labels, distances = nearest(points, centroids)
        history.append(float(distances.sum()))

        updated = np.empty_like(centroids)
        taken = set()
        for cluster in range(k):
            members = labels == cluster
            if members.any():
                updated[cluster] = points[members].mean(axis=0)
                continue
            # Reseed an empty cluster at the point farthest from its centroid.
            for candidate in np.argsort(-distances, kind="stable"):
                if candidate not in taken:
                    taken.add(candidate)
                    break
            LOGGER.debug("Reseeded empty cluster %d from point %d.", cluster,
                         candidate)
            updated[cluster] = points[candidate]
            distances[candidate] = 0.0

        shift = np.sqrt(((updated - centroids) ** 2).sum(axis=1)).max()
        centroids = updated
        if shift < tolerance:
            break

    labels, distances = nearest(points, centroids)
    history.append(float(distances.sum()))
    LOGGER.info("k-means with k=%d converged after %d iterations; objective "
                "%.6f.", k, iterations, history[-1])
    return KMeansResult(centroids, labels, iterations, history)
