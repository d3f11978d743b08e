"""Class balancing for training rows: SMOTE oversampling or per-sample
inverse-frequency loss weights.
"""

from enum import Enum
import logging

import numpy as np
from sklearn.neighbors import NearestNeighbors

from features.vectors import CONTINUOUS_COLUMNS

LOGGER = logging.getLogger(__name__)


class Balancing(Enum):
    NONE = "NONE"
    SMOTE = "SMOTE"
    CLASS_WEIGHTS = "CLASS_WEIGHTS"


def _neighbors(members, k_neighbors):
    """Indices of the ``k_neighbors`` nearest other members of each row."""
    search = NearestNeighbors(n_neighbors=min(k_neighbors + 1, len(members)))
    search.fit(members)
    _, indices = search.kneighbors(members)
    return [[j for j in row if j != i][:k_neighbors]
            for i, row in enumerate(indices)]


def smote_oversample(rows, classes, k_neighbors=5, seed=42,
                     interpolated_columns=len(CONTINUOUS_COLUMNS)):
    """Oversamples every class up to the majority class count.

    Each synthetic row is x + u * (x_nn - x) for a random member x of the
    class, one of its ``k_neighbors`` nearest same-class neighbors x_nn and u
    uniform in [0, 1]. Columns past ``interpolated_columns`` (the one-hot
    topic block) are copied from x.

    Args:
        rows: N x D training feature matrix.
        classes: Integer class of each row.
        k_neighbors: Neighbors considered; clamped to class size - 1.
        seed: Seed for the sampling.
        interpolated_columns: Leading columns that are interpolated.

    Returns:
        (rows, classes) with the originals first, then synthetic rows class
        by class. Already balanced input is returned unchanged.
    """
    rows = np.asarray(rows, dtype=np.float64)
    classes = np.asarray(classes)
    labels, counts = np.unique(classes, return_counts=True)
    target = counts.max()
    if (counts == target).all():
        return rows, classes

    rng = np.random.RandomState(seed)
    new_rows = [rows]
    new_classes = [classes]
    for label, count in zip(labels, counts):
        needed = target - count
        if needed == 0:
            continue
        members = rows[classes == label]
        if count == 1:
            LOGGER.warning("Class %s has a single member; duplicating it %d "
                           "times instead of interpolating.", label, needed)
            synthetic = np.repeat(members, needed, axis=0)
        else:
            neighbors = _neighbors(members, min(k_neighbors, count - 1))
            synthetic = np.empty((needed, rows.shape[1]))
            for index in range(needed):
                base = rng.randint(count)
                neighbor = neighbors[base][rng.randint(len(neighbors[base]))]
                gap = rng.uniform()
                synthetic[index] = members[base]
                synthetic[index, :interpolated_columns] += gap * (
                    members[neighbor, :interpolated_columns]
                    - members[base, :interpolated_columns])
        new_rows.append(synthetic)
        new_classes.append(np.full(needed, label, dtype=classes.dtype))
        LOGGER.info("SMOTE added %d rows to class %s.", needed, label)

    return np.vstack(new_rows), np.concatenate(new_classes)


def class_weights(classes):
    """Per-sample weights N / (n_classes * count of the sample's class)."""
    classes = np.asarray(classes)
    labels, inverse, counts = np.unique(classes, return_inverse=True,
                                        return_counts=True)
    per_class = len(classes) / (float(len(labels)) * counts)
    LOGGER.info("Class weights: %s.", dict(zip(labels.tolist(),
                                               per_class.round(4).tolist())))
    return per_class[inverse]
