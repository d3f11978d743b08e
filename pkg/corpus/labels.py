"""Labeled examples derived from resolved bug reports: resolution duration,
short/long time class and the final resolution ("destiny").
"""

from enum import Enum
import logging

from corpus.reports import Resolution
from errors import ConfigurationError
from errors import DataError
from utils import ceil_fraction

LOGGER = logging.getLogger(__name__)

SECONDS_PER_HOUR = 3600.0


class TimeClass(Enum):
    SHORT = "SHORT"
    LONG = "LONG"


class DestinyBinary(Enum):
    FIXED = "FIXED"
    NOT_FIXED = "NOT_FIXED"


class QuantileBasis(Enum):
    """Which examples the short/long threshold is computed over."""
    TRAIN_ONLY = "TRAIN_ONLY"
    WHOLE = "WHOLE"


class LabeledExample(object):
    """Targets for one resolved report.

    Attributes:
        report_id: Id of the BugReport.
        duration_hours: resolved_at - created_at, in hours.
        time_class: A ``TimeClass``, or None before ``assign_time_classes``.
        destiny_binary: FIXED iff ``destiny_label`` is FIXED.
        destiny_label: The report's ``Resolution``.
    """

    def __init__(self, report_id, duration_hours, destiny_label,
                 time_class=None):
        assert duration_hours >= 0.0
        self.report_id = report_id
        self.duration_hours = duration_hours
        self.destiny_label = destiny_label
        self.time_class = time_class

    @property
    def destiny_binary(self):
        if self.destiny_label == Resolution.FIXED:
            return DestinyBinary.FIXED
        return DestinyBinary.NOT_FIXED

    def with_time_class(self, time_class):
        return LabeledExample(self.report_id, self.duration_hours,
                              self.destiny_label, time_class=time_class)

    def __eq__(self, other):
        return (
            isinstance(other, LabeledExample)
            and self.report_id == other.report_id
            and self.duration_hours == other.duration_hours
            and self.destiny_label == other.destiny_label
            and self.time_class == other.time_class
        )

    def __repr__(self):
        return "LabeledExample({!r}, {}h, {}, {})".format(
            self.report_id, self.duration_hours, self.destiny_label.value,
            self.time_class.value if self.time_class else None)


def duration_hours(report):
    """Hours between filing and resolution of ``report``."""
    return (report.resolved_at - report.created_at).total_seconds() \
        / SECONDS_PER_HOUR


def derive_examples(reports):
    """Derives a LabeledExample for every report with a resolution time and a
    resolution label, preserving order. Other reports are skipped and counted.
    """
    examples = []
    for report in reports:
        if report.resolved_at is None or report.resolution is None:
            continue
        examples.append(LabeledExample(report.id, duration_hours(report),
                                       report.resolution))

    skipped = len(reports) - len(examples)
    if skipped:
        LOGGER.warning("Skipped %d unresolved reports.", skipped)
    LOGGER.info("Derived %d labeled examples.", len(examples))
    return examples


def nearest_rank_quantile(values, fraction):
    """The ``fraction`` quantile of ``values`` by the nearest-rank method:
    the ceil(fraction * N)-th smallest value.
    """
    if not values:
        raise DataError("Cannot take a quantile of no durations.")
    ordered = sorted(values)
    rank = max(1, ceil_fraction(fraction, len(ordered)))
    return ordered[rank - 1]


def assign_time_classes(examples, fraction=0.70,
                        basis=QuantileBasis.TRAIN_ONLY, train_ids=None):
    """Labels examples SHORT when their duration is at or below the
    ``fraction`` quantile of durations, LONG otherwise.

    Args:
        examples: LabeledExamples to label.
        fraction: Quantile separating short from long, in (0, 1).
        basis: Whether the quantile is taken over the training examples only
            or over all ``examples``.
        train_ids: Ids of the training reports; required for TRAIN_ONLY.

    Returns:
        (labeled examples in input order, threshold in hours)
    """
    if not 0.0 < fraction < 1.0:
        raise ConfigurationError(
            "Short fraction must lie in (0, 1); got {}.".format(fraction))

    if basis == QuantileBasis.TRAIN_ONLY:
        if train_ids is None:
            raise ConfigurationError(
                "TRAIN_ONLY quantile basis needs the training ids.")
        train_ids = set(train_ids)
        durations = [example.duration_hours for example in examples
                     if example.report_id in train_ids]
    else:
        durations = [example.duration_hours for example in examples]

    threshold = nearest_rank_quantile(durations, fraction)
    if min(durations) == max(durations):
        LOGGER.warning("All %d durations equal %s hours; every example is "
                       "SHORT.", len(durations), threshold)

    labeled = [
        example.with_time_class(
            TimeClass.SHORT if example.duration_hours <= threshold
            else TimeClass.LONG)
        for example in examples]
    short = sum(1 for example in labeled
                if example.time_class == TimeClass.SHORT)
    LOGGER.info("Short/long threshold %.2f hours (%s basis): %d short, %d "
                "long.", threshold, basis.value, short, len(labeled) - short)
    return labeled, threshold


def filter_fixed(examples):
    """Examples resolved as FIXED, in input order."""
    fixed = [example for example in examples
             if example.destiny_label == Resolution.FIXED]
    if not fixed:
        raise DataError("No FIXED examples; time-to-fix cannot be trained.")
    LOGGER.info("Kept %d of %d examples resolved as FIXED.", len(fixed),
                len(examples))
    return fixed
