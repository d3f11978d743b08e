"""Chronological train/test splits. Training reports all predate test
reports, as a deployed predictor only ever sees bugs filed before the ones it
is asked about.
"""

import logging

from corpus.reports import report_sort_key
from errors import ConfigurationError
from errors import DataError
from utils import ceil_fraction

LOGGER = logging.getLogger(__name__)


class CorpusSplit(object):
    """A leak-free train/test partition of report ids.

    Attributes:
        train_ids: Ids of the oldest reports, in chronological order.
        test_ids: Ids of the newest reports, in chronological order.
        short_long_threshold_hours: Threshold used for time classes, or None
            before one is computed.
        dropped_labels: Resolutions seen only in the test split; excluded from
            destiny evaluation.
    """

    def __init__(self, train_ids, test_ids, short_long_threshold_hours=None,
                 dropped_labels=frozenset()):
        self.train_ids = tuple(train_ids)
        self.test_ids = tuple(test_ids)
        self.short_long_threshold_hours = short_long_threshold_hours
        self.dropped_labels = frozenset(dropped_labels)
        assert not set(self.train_ids) & set(self.test_ids)

    def with_threshold(self, threshold):
        return CorpusSplit(self.train_ids, self.test_ids, threshold,
                           self.dropped_labels)

    def with_dropped_labels(self, dropped_labels):
        return CorpusSplit(self.train_ids, self.test_ids,
                           self.short_long_threshold_hours, dropped_labels)

    @property
    def train_fraction(self):
        return len(self.train_ids) / float(
            len(self.train_ids) + len(self.test_ids))

    def partition(self, items, key=lambda item: item.report_id):
        """Splits ``items`` (examples, streams, ...) into (train, test) lists
        by their report id, preserving order and discarding items in neither
        split.
        """
        train_ids = set(self.train_ids)
        test_ids = set(self.test_ids)
        train = [item for item in items if key(item) in train_ids]
        test = [item for item in items if key(item) in test_ids]
        return train, test


def chronological_split(reports, train_fraction=0.80):
    """Puts the oldest ceil(train_fraction * N) reports in the training split
    and the rest in the test split. Ties on creation time are broken by id,
    so a tied record at the boundary goes to training.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ConfigurationError(
            "Train fraction must lie in (0, 1); got {}.".format(
                train_fraction))
    if len(reports) < 2:
        raise DataError("A split needs at least 2 reports; got {}.".format(
            len(reports)))

    ordered = sorted(reports, key=report_sort_key)
    n_train = min(ceil_fraction(train_fraction, len(ordered)),
                  len(ordered) - 1)
    split = CorpusSplit([report.id for report in ordered[:n_train]],
                        [report.id for report in ordered[n_train:]])
    LOGGER.info("Chronological split: %d train, %d test; boundary at %s.",
                len(split.train_ids), len(split.test_ids),
                ordered[n_train].created_at.isoformat())
    return split


def prune_unseen_labels(split, examples):
    """Finds resolutions present in the test split but never seen in
    training. Only the destiny task excludes them; training examples are
    never removed.

    Returns:
        (split with ``dropped_labels`` set, test examples without the dropped
        labels)
    """
    train, test = split.partition(examples)
    train_labels = set(example.destiny_label for example in train)
    dropped = set(example.destiny_label for example in test) - train_labels
    kept = [example for example in test if example.destiny_label not in dropped]
    if dropped:
        LOGGER.warning("Resolutions absent from training: %s; dropped %d test "
                       "examples for destiny.",
                       sorted(label.value for label in dropped),
                       len(test) - len(kept))
    return split.with_dropped_labels(dropped), kept
