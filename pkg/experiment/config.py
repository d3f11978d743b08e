"""Run configuration: one JSON file naming the inputs, the task and every
knob of the pipeline. Sections are built through ``from_json`` factories;
command-line flags override values through ``utils.rsetattr`` paths such as
``train__epochs``.
"""

from enum import Enum
import json
import logging
import os

from corpus.labels import QuantileBasis
from corpus.reports import ColumnMapping
from errors import ConfigurationError
from features.smote import Balancing
from learn.trainer import TrainConfig
import settings
from textprep.preprocess import PrepConfig
from topics.embedding import EmbeddingBackend
from topics.model import DEFAULT_TOPICS
from utils import canonical_json
from utils import digest
from utils import rgetattr
from utils import rsetattr

LOGGER = logging.getLogger(__name__)


class Task(Enum):
    TIME_TO_RESOLUTION = "TIME_TO_RESOLUTION"
    TIME_TO_FIX = "TIME_TO_FIX"
    NUMERIC_TIME = "NUMERIC_TIME"
    DESTINY = "DESTINY"
    CORRELATION = "CORRELATION"
    FIX_OUTCOME = "FIX_OUTCOME"


CLASSIFICATION_TASKS = (Task.TIME_TO_RESOLUTION, Task.TIME_TO_FIX,
                        Task.DESTINY, Task.FIX_OUTCOME)


class Subset(Enum):
    FULL = "FULL"
    SHORT = "SHORT"
    LONG = "LONG"


def _enum(kind, value, name):
    if value is None or isinstance(value, kind):
        return value
    try:
        return kind(value)
    except ValueError:
        raise ConfigurationError("Unknown {} {!r}; expected one of {}.".format(
            name, value, [member.value for member in kind]))


def _resolve(base_dir, path):
    if path is None or os.path.isabs(path):
        return path
    return os.path.normpath(os.path.join(base_dir, path))


class PathsConfig(object):
    """Input and output locations. Relative paths in a configuration file
    resolve against the file's directory.

    Attributes:
        corpus: The bug-report export.
        lexicon: SentiWordNet-format lexicon file.
        stopwords: Stop-word file, or None for the builtin list.
        vectors: External document vectors for EXTERNAL_VECTORS topics.
        output_dir: Directory receiving caches, models, tables and manifests.
    """

    def __init__(self, corpus=None, lexicon=None, stopwords=None,  # pylint: disable=too-many-arguments
                 vectors=None, output_dir=settings.OUTPUT_DIR):
        self.corpus = corpus
        self.lexicon = lexicon
        self.stopwords = stopwords
        self.vectors = vectors
        self.output_dir = output_dir

    @classmethod
    def from_json(cls, configuration, base_dir="."):
        configuration = dict(configuration or {})
        unknown = set(configuration) - set(cls().to_json())
        if unknown:
            raise ConfigurationError("Unknown paths keys: {}.".format(
                sorted(unknown)))
        if configuration.get("output_dir") is None:
            configuration.pop("output_dir", None)
        return cls(**{key: _resolve(base_dir, value)
                      for key, value in configuration.items()})

    def to_json(self):
        return {
            "corpus": self.corpus,
            "lexicon": self.lexicon,
            "stopwords": self.stopwords,
            "vectors": self.vectors,
            "output_dir": self.output_dir,
        }

    def require(self, name):
        """The path named ``name``, which must exist.

        Raises:
            ConfigurationError: The path is unset or missing.
        """
        path = getattr(self, name)
        if path is None:
            raise ConfigurationError("paths.{} is not set.".format(name))
        if not os.path.exists(path):
            raise ConfigurationError("paths.{} {} does not exist.".format(
                name, path))
        return path

    @property
    def cache_path(self):
        return os.path.join(self.output_dir, settings.CORPUS_CACHE_NAME)

    @property
    def topic_model_path(self):
        return os.path.join(self.output_dir, settings.TOPIC_MODEL_NAME)

    @property
    def models_dir(self):
        return os.path.join(self.output_dir, settings.MODELS_DIR_NAME)

    @property
    def tables_dir(self):
        return os.path.join(self.output_dir, "tables")


class TopicsConfig(object):
    """Topic model settings: topic count and embedding backend."""

    def __init__(self, k=DEFAULT_TOPICS, embedding=None):
        self.k = k
        self.embedding = dict(embedding or {})

    @classmethod
    def from_json(cls, configuration):
        configuration = configuration or {}
        return cls(k=int(configuration.get("k", DEFAULT_TOPICS)),
                   embedding=configuration.get("embedding"))

    def to_json(self):
        return {"k": self.k, "embedding": self.embedding}

    def backend(self, vectors_path=None):
        embedding = dict(self.embedding)
        if vectors_path is not None:
            embedding.setdefault("vectors", vectors_path)
        return EmbeddingBackend.from_json(embedding)


class ModelsConfig(object):
    """Architecture and balancing settings shared by every experiment row.

    Attributes:
        hidden: MLP hidden layer widths.
        filters, kernel, stride: CNN1D convolution.
        smote_neighbors: k of SMOTE.
    """

    def __init__(self, hidden=(32, 16), filters=16, kernel=2, stride=1,  # pylint: disable=too-many-arguments
                 smote_neighbors=5):
        self.hidden = tuple(hidden)
        self.filters = filters
        self.kernel = kernel
        self.stride = stride
        self.smote_neighbors = smote_neighbors

    @classmethod
    def from_json(cls, configuration):
        configuration = dict(configuration or {})
        try:
            return cls(**configuration)
        except TypeError as error:
            raise ConfigurationError("Bad models section: {}".format(error))

    def to_json(self):
        return {
            "hidden": list(self.hidden),
            "filters": self.filters,
            "kernel": self.kernel,
            "stride": self.stride,
            "smote_neighbors": self.smote_neighbors,
        }


class PredictConfig(object):
    """Which saved models ``predict`` uses, named relative to the models
    directory, and an optional export of new reports to score.
    """

    def __init__(self, time_model="time_to_resolution__mlp.bdmodel",
                 destiny_model="destiny__mlp.bdmodel",
                 hours_model="numeric_time_to_resolution__cnn_full.bdmodel",
                 reports=None):
        self.time_model = time_model
        self.destiny_model = destiny_model
        self.hours_model = hours_model
        self.reports = reports

    @classmethod
    def from_json(cls, configuration, base_dir="."):
        configuration = dict(configuration or {})
        if "reports" in configuration:
            configuration["reports"] = _resolve(base_dir,
                                                configuration["reports"])
        try:
            return cls(**configuration)
        except TypeError as error:
            raise ConfigurationError("Bad predict section: {}".format(error))

    def to_json(self):
        return {
            "time_model": self.time_model,
            "destiny_model": self.destiny_model,
            "hours_model": self.hours_model,
            "reports": self.reports,
        }


class RunConfig(object):  # pylint: disable=too-many-instance-attributes
    """The effective configuration of a run.

    Attributes:
        paths: PathsConfig.
        columns: ColumnMapping of the export.
        text: "text" section, turned into a PrepConfig by ``prep_config``.
        topics: TopicsConfig.
        features: "features" section, turned into FeatureConfigs per row.
        train: TrainConfig.
        models: ModelsConfig.
        predict: PredictConfig.
        task: The experiment ``Task``.
        balancing: ``Balancing`` of the weighted experiment rows.
        subset: ``Subset`` of numeric-time and correlation runs; None runs
            every subset.
        seed: Seed all randomness flows from.
        quantile_basis: ``QuantileBasis`` of the short/long threshold.
        short_fraction: Share of examples labeled SHORT.
        train_fraction: Share of examples in the training split.
        render: Image format ("png" or "svg") for plots, or None for data
            files only.
    """

    def __init__(self, paths=None, columns=None, text=None, topics=None,  # pylint: disable=too-many-arguments,too-many-locals
                 features=None, train=None, models=None, predict=None,
                 task=Task.TIME_TO_RESOLUTION, balancing=Balancing.SMOTE,
                 subset=None, seed=settings.DEFAULT_SEED,
                 quantile_basis=QuantileBasis.TRAIN_ONLY, short_fraction=0.70,
                 train_fraction=0.80, render=None):
        self.paths = paths or PathsConfig()
        self.columns = columns or ColumnMapping()
        self.text = dict(text or {})
        self.topics = topics or TopicsConfig()
        self.features = dict(features or {})
        self.train = train or TrainConfig(seed=seed)
        self.models = models or ModelsConfig()
        self.predict = predict or PredictConfig()
        self.task = task
        self.balancing = balancing
        self.subset = subset
        self.seed = seed
        self.quantile_basis = quantile_basis
        self.short_fraction = short_fraction
        self.train_fraction = train_fraction
        self.render = render

    @classmethod
    def from_json(cls, configuration, base_dir="."):
        """Factory for creating a RunConfig from a parsed JSON document.

        Args:
            configuration: The parsed document.
            base_dir: Directory relative paths resolve against.
        """
        configuration = dict(configuration)
        seed = int(configuration.pop("seed", settings.DEFAULT_SEED))
        text = dict(configuration.pop("text", None) or {})
        if "stopwords" in text:
            text["stopwords"] = _resolve(base_dir, text["stopwords"])
        render = configuration.pop("render", None)
        if render not in (None, "png", "svg"):
            raise ConfigurationError("render must be png or svg; got "
                                     "{!r}.".format(render))
        config = cls(
            paths=PathsConfig.from_json(configuration.pop("paths", None),
                                        base_dir),
            columns=ColumnMapping.from_json(configuration.pop("columns",
                                                              None)),
            text=text,
            topics=TopicsConfig.from_json(configuration.pop("topics", None)),
            features=configuration.pop("features", None),
            train=TrainConfig.from_json(configuration.pop("train", None),
                                        seed=seed),
            models=ModelsConfig.from_json(configuration.pop("models", None)),
            predict=PredictConfig.from_json(configuration.pop("predict",
                                                              None),
                                            base_dir),
            task=_enum(Task, configuration.pop("task", "TIME_TO_RESOLUTION"),
                       "task"),
            balancing=_enum(Balancing, configuration.pop("balancing",
                                                         "SMOTE"),
                            "balancing"),
            subset=_enum(Subset, configuration.pop("subset", None), "subset"),
            seed=seed,
            quantile_basis=_enum(
                QuantileBasis, configuration.pop("quantile_basis",
                                                 "TRAIN_ONLY"),
                "quantile_basis"),
            short_fraction=float(configuration.pop("short_fraction", 0.70)),
            train_fraction=float(configuration.pop("train_fraction", 0.80)),
            render=render)
        if configuration:
            raise ConfigurationError("Unknown configuration keys: {}.".format(
                sorted(configuration)))
        return config

    @classmethod
    def load(cls, path):
        """Reads a RunConfig from the JSON file at ``path``."""
        try:
            with open(path, encoding="utf-8") as stream:
                document = json.load(stream)
        except (IOError, OSError) as error:
            raise ConfigurationError("Cannot read configuration {}: {}".format(
                path, error))
        except ValueError as error:
            raise ConfigurationError("Configuration {} is not valid JSON: "
                                     "{}".format(path, error))
        LOGGER.info("Loaded configuration %s.", path)
        return cls.from_json(document,
                             os.path.dirname(os.path.abspath(path)))

    def to_json(self):
        text = dict(self.text)
        text.setdefault("stopwords", self.paths.stopwords)
        return {
            "paths": self.paths.to_json(),
            "columns": self.columns.to_json(),
            "text": text,
            "topics": self.topics.to_json(),
            "features": self.features,
            "train": self.train.to_json(),
            "models": self.models.to_json(),
            "predict": self.predict.to_json(),
            "task": self.task.value,
            "balancing": self.balancing.value,
            "subset": self.subset.value if self.subset else None,
            "seed": self.seed,
            "quantile_basis": self.quantile_basis.value,
            "short_fraction": self.short_fraction,
            "train_fraction": self.train_fraction,
            "render": self.render,
        }

    def digest(self):
        """SHA-256 of the canonical JSON of the effective configuration."""
        return digest(canonical_json(self.to_json()))

    def apply_overrides(self, overrides):
        """Sets values by dunder path, e.g. {"train__epochs": 5}. Strings
        given for enum-valued settings are converted. The run seed also seeds
        training.
        """
        for path, value in sorted(overrides.items()):
            try:
                current = rgetattr(self, path)
                if isinstance(current, Enum):
                    value = _enum(type(current), value, path)
                rsetattr(self, path, value)
            except AttributeError as error:
                raise ConfigurationError("Cannot override {}: {}".format(
                    path, error))
            if path == "seed":
                self.train.seed = value
            LOGGER.info("Override %s = %r.", path, value)

    def prep_config(self):
        text = dict(self.text)
        text.setdefault("stopwords", self.paths.stopwords)
        return PrepConfig.from_json(text)

    def validate_task(self):
        """Rejects a subset the task does not have.

        Raises:
            ConfigurationError: A SHORT or LONG subset with a classification
                task.
        """
        if self.task in CLASSIFICATION_TASKS and self.subset not in (
                None, Subset.FULL):
            raise ConfigurationError(
                "Subset {} does not apply to the {} task.".format(
                    self.subset.value, self.task.value))
