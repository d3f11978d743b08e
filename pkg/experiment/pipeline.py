"""Featurization and experiment rows shared by the commands: loading the
cached corpus, sentiment and topic features, task labels, and training and
scoring one model per table row.
"""

from collections import namedtuple
import logging
from operator import attrgetter
import os

import numpy as np

from corpus.cache import load_corpus
from corpus.labels import TimeClass
from corpus.labels import assign_time_classes
from corpus.labels import derive_examples
from corpus.labels import filter_fixed
from corpus.reports import Resolution
from corpus.split import prune_unseen_labels
from errors import ConfigurationError
from errors import DataError
from evaluation.metrics import classification_report
from evaluation.metrics import confusion
from evaluation.metrics import regression_report
from experiment.config import Subset
from experiment.config import Task
from features.smote import Balancing
from features.smote import class_weights
from features.smote import smote_oversample
from features.vectors import CONTINUOUS_COLUMNS
from features.vectors import FeatureConfig
from features.vectors import Standardizer
from features.vectors import build_matrix
from learn.network import ModelKind
from learn.network import ModelSpec
from learn.network import OutputKind
from learn.persistence import save_model
from learn.svr import train_svr
from learn.trainer import predict
from learn.trainer import predict_classes
from learn.trainer import train
from sentiment.lexicon import load_lexicon
from sentiment.scoring import score_streams
from textprep.preprocess import preprocess_reports
from topics.model import assign_topic
from topics.model import fit_topics
from topics.model import save_topic_model

LOGGER = logging.getLogger(__name__)

# Columns of the published tables, in order.
BASE_FEATURES = "Emotion, Emotionality, Priority"
TOPIC_FEATURES = BASE_FEATURES + ", Predicted Topic"


def load_cache(config):
    path = config.paths.cache_path
    if not os.path.exists(path):
        raise ConfigurationError(
            "No corpus cache at {}; run the ingest command first.".format(
                path))
    return load_corpus(path)


class PreparedCorpus(object):
    """Labeled examples of a cached corpus with their text features.

    Attributes:
        config: The RunConfig.
        split: CorpusSplit of the labeled reports.
        examples: LabeledExamples without time classes.
        reports: Dict of report id to BugReport.
        streams: Dict of report id to TokenStream.
        scores: Dict of report id to SentimentScore.
        prep: The PrepConfig used.
    """

    def __init__(self, config, cache):
        self.config = config
        self.split = cache.split
        self.examples = derive_examples(cache.reports)
        labeled_ids = set(example.report_id for example in self.examples)
        labeled = [report for report in cache.reports
                   if report.id in labeled_ids]
        self.reports = {report.id: report for report in labeled}

        self.prep = config.prep_config()
        lexicon = load_lexicon(config.paths.require("lexicon"),
                               self.prep.normalize)
        streams = preprocess_reports(labeled, self.prep)
        self.streams = {stream.report_id: stream for stream in streams}
        self.scores = dict(zip((stream.report_id for stream in streams),
                               score_streams(streams, lexicon)))
        self._topic_model = None
        self._topics = None

    def topics(self):
        """(TopicModel, dict of report id to topic id), fitting and saving
        the model on first use.
        """
        if self._topic_model is None:
            config = self.config
            train_streams = [self.streams[report_id]
                             for report_id in self.split.train_ids]
            model = fit_topics(train_streams, config.topics.k,
                               config.topics.backend(config.paths.vectors),
                               config.seed)
            save_topic_model(config.paths.topic_model_path, model)
            topics = dict(zip(model.train_ids, model.train_labels))
            for report_id in self.split.test_ids:
                topics[report_id] = assign_topic(self.streams[report_id],
                                                 model)
            self._topic_model, self._topics = model, topics
        return self._topic_model, self._topics

    def time_classes(self, examples):
        """Examples with SHORT/LONG classes, thresholded on ``examples``."""
        return assign_time_classes(
            examples, self.config.short_fraction, self.config.quantile_basis,
            self.split.train_ids)

    def features(self, examples, feature_config):
        """Unstandardized feature matrix of ``examples``."""
        topics = None
        if feature_config.use_topic:
            _, assigned = self.topics()
            topics = [assigned[example.report_id] for example in examples]
        return build_matrix([self.reports[example.report_id]
                             for example in examples],
                            [self.scores[example.report_id]
                             for example in examples],
                            topics, feature_config)


TaskData = namedtuple('TaskData', ('name', 'train', 'test', 'classes',
                                   'target', 'threshold'))


def classification_data(task, prepared):
    """Train and test examples of a classification task.

    Returns:
        TaskData whose ``target`` maps an example to its class name.
    """
    threshold = None
    split = prepared.split
    if task == Task.TIME_TO_RESOLUTION:
        examples, threshold = prepared.time_classes(prepared.examples)
        train_examples, test_examples = split.partition(examples)
        classes = (TimeClass.SHORT.value, TimeClass.LONG.value)
        target = attrgetter("time_class.value")
    elif task == Task.TIME_TO_FIX:
        examples, threshold = prepared.time_classes(
            filter_fixed(prepared.examples))
        train_examples, test_examples = split.partition(examples)
        classes = (TimeClass.SHORT.value, TimeClass.LONG.value)
        target = attrgetter("time_class.value")
    elif task == Task.FIX_OUTCOME:
        train_examples, test_examples = split.partition(prepared.examples)
        classes = ("FIXED", "NOT_FIXED")
        target = attrgetter("destiny_binary.value")
    elif task == Task.DESTINY:
        train_examples, _ = split.partition(prepared.examples)
        _, test_examples = prune_unseen_labels(split, prepared.examples)
        seen = set(example.destiny_label for example in train_examples)
        classes = tuple(label.value for label in Resolution if label in seen)
        if len(classes) < 2:
            raise DataError("Destiny needs at least 2 resolutions in "
                            "training; found {}.".format(list(classes)))
        target = attrgetter("destiny_label.value")
    else:
        raise ConfigurationError("{} is not a classification task.".format(
            task.value))

    if len(train_examples) < 2 or not test_examples:
        raise DataError("{} has {} training and {} test examples.".format(
            task.value, len(train_examples), len(test_examples)))
    return TaskData(task.value.lower(), train_examples, test_examples,
                    classes, target, threshold)


def regression_data(fixed_only, subset, prepared):
    """Train and test examples of a numeric-time table row.

    Args:
        fixed_only: Time-to-fix (FIXED reports) instead of
            time-to-resolution.
        subset: ``Subset`` restricting examples by their SHORT/LONG class.
        prepared: The PreparedCorpus.
    """
    examples = prepared.examples
    if fixed_only:
        examples = filter_fixed(examples)
    examples, threshold = prepared.time_classes(examples)
    if subset != Subset.FULL:
        examples = [example for example in examples
                    if example.time_class.value == subset.value]
    train_examples, test_examples = prepared.split.partition(examples)
    name = "numeric_time_to_fix" if fixed_only else \
        "numeric_time_to_resolution"
    if len(train_examples) < 2 or not test_examples:
        raise DataError("{} ({}) has {} training and {} test examples.".format(
            name, subset.value, len(train_examples), len(test_examples)))
    return TaskData(name, train_examples, test_examples, None,
                    attrgetter("duration_hours"), threshold)


GridRow = namedtuple('GridRow', ('label', 'slug', 'kind', 'use_topic',
                                 'balancing', 'subset'))

_KIND_NAMES = {ModelKind.MLP: "MLP", ModelKind.CNN1D: "CNN",
               ModelKind.LINREG: "Linear Regression"}
_SUBSET_NAMES = {Subset.FULL: "Full Dataset", Subset.SHORT: "Short",
                 Subset.LONG: "Long"}


def classification_grid(balancing):
    """{MLP, CNN} x {without, with topic} x {unbalanced, ``balancing``}, in
    published table order. Balancing NONE leaves only the unbalanced rows.
    """
    rows = []
    variants = [Balancing.NONE]
    if balancing != Balancing.NONE:
        variants.append(balancing)
    for variant in variants:
        for use_topic in (False, True):
            for kind in (ModelKind.MLP, ModelKind.CNN1D):
                label = "{} ({})".format(
                    _KIND_NAMES[kind],
                    TOPIC_FEATURES if use_topic else BASE_FEATURES)
                slug = "mlp" if kind == ModelKind.MLP else "cnn"
                if use_topic:
                    slug += "_topic"
                if variant != Balancing.NONE:
                    label += " Weighted"
                    slug += "_weighted"
                rows.append(GridRow(label, slug, kind, use_topic, variant,
                                    Subset.FULL))
    return rows


def regression_grid(subset=None):
    """{CNN, LINREG} x {FULL, SHORT, LONG}, or one subset."""
    subsets = [subset] if subset is not None else list(Subset)
    return [GridRow("{} ({})".format(_KIND_NAMES[kind], _SUBSET_NAMES[each]),
                    "{}_{}".format("cnn" if kind == ModelKind.CNN1D
                                   else "linreg", each.value.lower()),
                    kind, False, Balancing.NONE, each)
            for kind in (ModelKind.CNN1D, ModelKind.LINREG)
            for each in subsets]


def model_spec(kind, width, classes, models):
    """ModelSpec of a grid row; ``classes`` is None for regression."""
    if classes is None:
        output, count = OutputKind.SCALAR, None
    elif len(classes) == 2:
        output, count = OutputKind.BINARY, None
    else:
        output, count = OutputKind.MULTICLASS, len(classes)
    return ModelSpec(kind, width, output, classes=count,
                     hidden=models.hidden, filters=models.filters,
                     kernel=models.kernel, stride=models.stride)


def _fit_features(prepared, data, feature_config):
    train_rows = prepared.features(data.train, feature_config)
    test_rows = prepared.features(data.test, feature_config)
    standardizer = None
    if feature_config.standardize:
        standardizer = Standardizer(columns=len(CONTINUOUS_COLUMNS)).fit(
            train_rows)
        train_rows = standardizer.transform(train_rows)
        test_rows = standardizer.transform(test_rows)
    return train_rows, test_rows, standardizer


def _metadata(prepared, data, row, feature_config, standardizer):  # pylint: disable=too-many-arguments
    topic_fitted_on = None
    if feature_config.use_topic:
        model, _ = prepared.topics()
        topic_fitted_on = model.fitted_on
    return {
        "task": data.name,
        "row": row.label,
        "classes": list(data.classes) if data.classes else None,
        "features": feature_config.to_json(),
        "standardizer": standardizer.to_json() if standardizer else None,
        "topic_fitted_on": topic_fitted_on,
        "prep": prepared.prep.to_json(),
        "balancing": row.balancing.value,
        "threshold_hours": data.threshold,
    }


def model_path(config, name, slug):
    return os.path.join(config.paths.models_dir,
                        "{}__{}.bdmodel".format(name, slug))


def run_row(prepared, data, row):
    """Trains the model of one table row, saves it and scores it on the test
    examples.

    Returns:
        (ClassificationReport or RegressionReport, TrainedModel, model path)
    """
    config = prepared.config
    topics = config.topics.k if row.use_topic else None
    feature_config = FeatureConfig.from_json(config.features, row.use_topic,
                                             topics)
    train_rows, test_rows, standardizer = _fit_features(prepared, data,
                                                        feature_config)
    spec = model_spec(row.kind, feature_config.width, data.classes,
                      config.models)
    metadata = _metadata(prepared, data, row, feature_config, standardizer)
    LOGGER.info("Training %s: %s.", data.name, row.label)

    if data.classes is None:
        targets = np.array([data.target(example) for example in data.train])
        model = train(spec, config.train, train_rows, targets,
                      metadata=metadata)
        truth = [data.target(example) for example in data.test]
        report = regression_report(truth, predict(model, test_rows))
        LOGGER.info("%s: MAE %.2f, MSE %.2f.", row.label, report.mae,
                    report.mse)
    else:
        index = {name: position for position, name in enumerate(data.classes)}
        targets = np.array([index[data.target(example)]
                            for example in data.train])
        weights = None
        if row.balancing == Balancing.SMOTE:
            train_rows, targets = smote_oversample(
                train_rows, targets, config.models.smote_neighbors,
                config.seed, len(CONTINUOUS_COLUMNS))
        elif row.balancing == Balancing.CLASS_WEIGHTS:
            weights = class_weights(targets)
        model = train(spec, config.train, train_rows, targets, weights,
                      metadata)
        predicted = [data.classes[i]
                     for i in predict_classes(model, test_rows)]
        truth = [data.target(example) for example in data.test]
        report = classification_report(confusion(truth, predicted,
                                                 data.classes))
        LOGGER.info("%s: accuracy %.4f, weighted F1 %.4f.", row.label,
                    report.accuracy, report.f1)

    if not os.path.exists(config.paths.models_dir):
        os.makedirs(config.paths.models_dir)
    path = model_path(config, data.name, row.slug)
    save_model(model, path)
    return report, model, path


def fit_correlation(prepared, subset=None):
    """SVR of duration on emotionality over time-to-resolution examples.

    Args:
        prepared: The PreparedCorpus.
        subset: ``Subset`` restricting examples by their SHORT/LONG class;
            None or FULL uses every example.

    Returns:
        SvrFit of the line, fitted on training examples and scored on test
        examples.
    """
    examples = prepared.examples
    if subset not in (None, Subset.FULL):
        labeled, _ = prepared.time_classes(examples)
        examples = [example for example in labeled
                    if example.time_class.value == subset.value]
    train_examples, test_examples = prepared.split.partition(examples)
    if not test_examples:
        raise DataError("Correlation has no test examples.")

    def emotionality(items):
        return [prepared.scores[example.report_id].emotionality
                for example in items]

    def hours(items):
        return [example.duration_hours for example in items]

    train_config = prepared.config.train
    return train_svr(emotionality(train_examples), hours(train_examples),
                     emotionality(test_examples), hours(test_examples),
                     epsilon=train_config.svr_epsilon, l2=train_config.svr_l2)


def features_for_model(model, reports, scores, topics=None):
    """Feature matrix of new reports as the model's training rows were built,
    standardized with the training statistics the model carries.
    """
    metadata = model.metadata
    saved = metadata["features"]
    feature_config = FeatureConfig.from_json(saved, saved["use_topic"],
                                             saved["topics"])
    rows = build_matrix(reports, scores,
                        topics if feature_config.use_topic else None,
                        feature_config)
    if metadata["standardizer"]:
        rows = Standardizer.from_json(metadata["standardizer"]).transform(
            rows)
    return rows
