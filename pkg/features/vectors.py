"""Feature vectors: [emotion, emotionality, priority, one-hot topic...]."""

from enum import Enum
import logging

import numpy as np
import pandas as pd

from errors import ConfigurationError
from errors import DataError
from sentiment.scoring import EmotionClass

LOGGER = logging.getLogger(__name__)

CONTINUOUS_COLUMNS = ("emotion", "emotionality", "priority")


class EmotionEncoding(Enum):
    SIGNED_VALUE = "SIGNED_VALUE"
    BINARY = "BINARY"


class FeatureConfig(object):
    """Which features are built and how.

    Attributes:
        use_topic: Append a one-hot block of length ``topics``.
        topics: Topic count k; required when ``use_topic``.
        emotion_encoding: SIGNED_VALUE uses pos - neg, BINARY uses +1 for a
            POSITIVE and -1 for a NEGATIVE emotion class.
        standardize: z-score the continuous columns with training statistics.
    """

    def __init__(self, use_topic=False, topics=None,
                 emotion_encoding=EmotionEncoding.SIGNED_VALUE,
                 standardize=True):
        if use_topic and not topics:
            raise ConfigurationError("Topic features need the topic count.")
        self.use_topic = use_topic
        self.topics = topics if use_topic else None
        self.emotion_encoding = emotion_encoding
        self.standardize = standardize

    @classmethod
    def from_json(cls, configuration, use_topic=False, topics=None):
        """Factory for creating a FeatureConfig from the "features" section of
        a run configuration. Topic use is decided per experiment row.
        """
        configuration = configuration or {}
        try:
            encoding = EmotionEncoding(
                configuration.get("emotion_encoding", "SIGNED_VALUE"))
        except ValueError:
            raise ConfigurationError("Unknown emotion_encoding {!r}.".format(
                configuration.get("emotion_encoding")))
        return cls(use_topic=use_topic, topics=topics,
                   emotion_encoding=encoding,
                   standardize=bool(configuration.get("standardize", True)))

    def to_json(self):
        return {
            "use_topic": self.use_topic,
            "topics": self.topics,
            "emotion_encoding": self.emotion_encoding.value,
            "standardize": self.standardize,
        }

    @property
    def width(self):
        return len(CONTINUOUS_COLUMNS) + (self.topics if self.use_topic else 0)

    @property
    def column_names(self):
        names = list(CONTINUOUS_COLUMNS)
        if self.use_topic:
            names += ["topic_{}".format(topic) for topic in range(self.topics)]
        return names


def build_features(report, score, topic, config):
    """Feature vector of one report.

    Args:
        report: The BugReport, for its priority.
        score: The report's SentimentScore.
        topic: Topic id, or None when ``config.use_topic`` is false.
        config: The FeatureConfig.
    """
    assert (topic is not None) == config.use_topic
    if config.emotion_encoding == EmotionEncoding.BINARY:
        emotion = 1.0 if score.emotion_class == EmotionClass.POSITIVE else -1.0
    else:
        emotion = score.emotion_value

    vector = np.zeros(config.width)
    vector[0] = emotion
    vector[1] = score.emotionality
    vector[2] = float(report.priority)
    if config.use_topic:
        if not 0 <= topic < config.topics:
            raise DataError("Topic id {} is outside [0, {}).".format(
                topic, config.topics))
        vector[len(CONTINUOUS_COLUMNS) + topic] = 1.0
    return vector


def build_matrix(reports, scores, topics, config):
    """Stacks ``build_features`` rows. ``topics`` may be None without topic
    features.
    """
    if topics is None:
        topics = [None] * len(reports)
    if not len(reports) == len(scores) == len(topics):
        raise DataError("Got {} reports, {} scores and {} topics.".format(
            len(reports), len(scores), len(topics)))
    matrix = np.zeros((len(reports), config.width))
    for row, (report, score, topic) in enumerate(zip(reports, scores,
                                                     topics)):
        matrix[row] = build_features(report, score, topic, config)
    return matrix


class Standardizer(object):
    """z-scores the continuous feature columns; one-hot columns pass through.

    Attributes:
        means: Column means of the training rows.
        stds: Column standard deviations of the training rows; a constant
            column keeps a divisor of 1.
    """

    def __init__(self, means=None, stds=None,
                 columns=len(CONTINUOUS_COLUMNS)):
        self.columns = columns
        self.means = None if means is None else np.asarray(means, float)
        self.stds = None if stds is None else np.asarray(stds, float)

    def fit(self, rows):
        rows = np.asarray(rows, dtype=np.float64)[:, :self.columns]
        if not len(rows):
            raise DataError("Cannot standardize without training rows.")
        self.means = rows.mean(axis=0)
        stds = rows.std(axis=0)
        constant = stds == 0.0
        if constant.any():
            LOGGER.warning("Feature columns %s are constant over training "
                           "rows.", list(np.flatnonzero(constant)))
        self.stds = np.where(constant, 1.0, stds)
        return self

    def transform(self, rows):
        assert self.means is not None, "Standardizer is not fitted."
        rows = np.array(rows, dtype=np.float64)
        rows[:, :self.columns] = (rows[:, :self.columns] - self.means) \
            / self.stds
        return rows

    def to_json(self):
        return {"means": list(self.means), "stds": list(self.stds),
                "columns": self.columns}

    @classmethod
    def from_json(cls, configuration):
        return cls(configuration["means"], configuration["stds"],
                   configuration["columns"])


def export_features(path, config, report_ids, splits, rows, targets):
    """Writes featurized rows as a delimited table.

    Args:
        path: Output file.
        config: FeatureConfig naming the feature columns.
        report_ids: Id of each row.
        splits: "train" or "test" for each row.
        rows: Feature matrix.
        targets: List of (column name, values) written after the features.
    """
    frame = pd.DataFrame(np.asarray(rows), columns=config.column_names)
    frame.insert(0, "split", list(splits))
    frame.insert(0, "report_id", list(report_ids))
    for name, values in targets:
        frame[name] = list(values)
    frame.to_csv(path, index=False)
    LOGGER.info("Exported %d feature rows to %s.", len(frame), path)
