"""Topic model: embeddings clustered by k-means, each cluster described by
its class-based TF-IDF terms. Topic ids are used as a categorical feature.
"""

from collections import Counter
import logging

import numpy as np

from errors import ConfigurationError
from errors import DataError
from errors import TrainingError
from storage.binary_format import BinaryReader
from storage.binary_format import BinaryWriter
from topics.embedding import EmbeddingBackend
from topics.embedding import EmbeddingKind
from topics.kmeans import kmeans
from topics.kmeans import nearest
from utils import digest

LOGGER = logging.getLogger(__name__)

TOPIC_MAGIC = "BDTOPIC/1"

DEFAULT_TOPICS = 20
TOP_TERMS = 10


class TopicModel(object):
    """A fitted topic model.

    Attributes:
        k: Number of topics.
        centroids: k x dimension array of cluster centers.
        topic_terms: For each topic, up to ``TOP_TERMS`` (term, weight) pairs
            ranked by class-based TF-IDF.
        vocabulary: Dict of term to column index over the clustered
            documents.
        backend: The fitted EmbeddingBackend.
        seed: Seed used for k-means++ initialization.
        fitted_on: Digest of the training report ids.
        train_ids: Ids of the training streams, in fit order.
        train_labels: Fit-time topic of each training stream.
        objective_history: k-means objective after every assignment step.
    """

    def __init__(self, k, centroids, topic_terms, vocabulary, backend, seed,  # pylint: disable=too-many-arguments
                 fitted_on, train_ids=(), train_labels=(),
                 objective_history=()):
        assert k >= 2
        self.k = k
        self.centroids = np.asarray(centroids, dtype=np.float64)
        self.topic_terms = topic_terms
        self.vocabulary = vocabulary
        self.backend = backend
        self.seed = seed
        self.fitted_on = fitted_on
        self.train_ids = list(train_ids)
        self.train_labels = [int(label) for label in train_labels]
        self.objective_history = list(objective_history)

    def describe(self):
        """One line per topic: id and its top terms."""
        return ["{:>3} {}".format(topic, " ".join(
            term for term, _ in terms))
                for topic, terms in enumerate(self.topic_terms)]


def class_tfidf(documents, labels, k):
    """Class-based TF-IDF over clustered documents.

    weight(t, c) = tf(t, c) * ln(1 + A / tf(t)), where tf(t, c) counts term t
    in the concatenated documents of cluster c, tf(t) counts it across all
    clusters and A is the total term count divided by ``k``.

    Args:
        documents: Token lists.
        labels: Cluster of each document.
        k: Number of clusters.

    Returns:
        (vocabulary dict of term to column, k x V weight array)
    """
    vocabulary = {term: index for index, term in enumerate(
        sorted(set(term for tokens in documents for term in tokens)))}
    counts = np.zeros((k, len(vocabulary)))
    for tokens, label in zip(documents, labels):
        for term, count in Counter(tokens).items():
            counts[label, vocabulary[term]] += count

    term_totals = counts.sum(axis=0)
    average = counts.sum() / float(k)
    weights = counts * np.log(1.0 + average / term_totals)
    return vocabulary, weights


def top_terms(vocabulary, weights, count=TOP_TERMS):
    """The ``count`` highest positive-weight terms of each cluster, heaviest
    first, ties by term.
    """
    terms = sorted(vocabulary, key=vocabulary.get)
    ranked = []
    for row in weights:
        order = sorted((-row[column], terms[column])
                       for column in np.flatnonzero(row > 0.0))
        ranked.append([(term, -weight) for weight, term in order[:count]])
    return ranked


def fit_topics(train_streams, k=DEFAULT_TOPICS, backend=None, seed=42):
    """Fits a TopicModel on training streams.

    Non-empty streams are clustered; empty ones take their topic from
    ``assign_topic``.

    Args:
        train_streams: TokenStreams of the training reports.
        k: Number of topics.
        backend: EmbeddingBackend; fitted here. Defaults to HASHED_TFIDF.
        seed: k-means++ seed.
    """
    if k < 2:
        raise ConfigurationError("Topic count must be at least 2; got "
                                 "{}.".format(k))
    backend = backend or EmbeddingBackend()
    backend.fit(train_streams)

    clustered = [stream for stream in train_streams if stream.tokens]
    if len(clustered) < k:
        raise DataError(
            "Only {} non-empty training documents for {} topics.".format(
                len(clustered), k))

    LOGGER.info("Fitting %d topics on %d of %d training documents.", k,
                len(clustered), len(train_streams))
    embeddings = backend.embed_all(clustered)
    result = kmeans(embeddings, k, seed)

    vocabulary, weights = class_tfidf(
        [stream.tokens for stream in clustered], result.labels, k)
    terms = top_terms(vocabulary, weights)
    empty_topics = [topic for topic, ranked in enumerate(terms) if not ranked]
    if empty_topics:
        raise TrainingError(
            "Topics {} have no documents after the final assignment; the "
            "training documents have fewer than {} distinct embeddings. "
            "Lower topics.k.".format(empty_topics, k))

    model = TopicModel(
        k, result.centroids, terms, vocabulary, backend, seed,
        digest(*[stream.report_id for stream in train_streams]),
        objective_history=result.objective_history)
    fit_labels = iter(result.labels)
    model.train_ids = [stream.report_id for stream in train_streams]
    model.train_labels = [
        int(next(fit_labels)) if stream.tokens
        else assign_topic(stream, model)
        for stream in train_streams]
    return model


def assign_topic(stream, model, backend=None):
    """Topic of ``stream``: its nearest centroid, ties to the lowest id.
    Empty streams embed to the zero vector and are assigned the same way.
    """
    backend = backend or model.backend
    vector = backend.embed(stream)
    labels, _ = nearest(vector[np.newaxis, :], model.centroids)
    return int(labels[0])


def assign_topics(streams, model):
    return [assign_topic(stream, model) for stream in streams]


def save_topic_model(path, model):
    """Writes ``model`` as BDTOPIC/1."""
    writer = BinaryWriter(TOPIC_MAGIC)
    writer.write_json({
        "k": model.k,
        "seed": model.seed,
        "fitted_on": model.fitted_on,
        "backend": model.backend.to_json(),
    })
    writer.write_float64_array(model.centroids)
    idf = model.backend.idf_weights
    writer.write_float64_array(idf if idf is not None else [])

    terms = sorted(model.vocabulary, key=model.vocabulary.get)
    writer.write_uint64(len(terms))
    for term in terms:
        writer.write_string(term)
    for ranked in model.topic_terms:
        writer.write_uint32(len(ranked))
        for term, weight in ranked:
            writer.write_string(term)
            writer.write_float64(weight)

    writer.write_uint64(len(model.train_ids))
    for report_id in model.train_ids:
        writer.write_string(str(report_id))
    writer.write_int64_array(model.train_labels)
    writer.write_float64_array(model.objective_history)
    writer.save(path)
    LOGGER.info("Saved %d-topic model to %s.", model.k, path)


def load_topic_model(path):
    """Reads a model written by ``save_topic_model``."""
    reader = BinaryReader.load(path, TOPIC_MAGIC)
    header = reader.read_json()
    backend_json = header["backend"]
    k = header["k"]
    dimension = backend_json["dimension"]
    centroids = reader.read_float64_array().reshape(k, dimension)
    idf = reader.read_float64_array()

    kind = EmbeddingKind(backend_json["kind"])
    backend = EmbeddingBackend(
        kind=kind, dimension=dimension, hash_seed=backend_json["hash_seed"],
        idf_weights=idf if kind == EmbeddingKind.HASHED_TFIDF else None,
        vectors_path=backend_json["vectors"])

    vocabulary = {reader.read_string(): index
                  for index in range(reader.read_uint64())}
    topic_terms = []
    for _ in range(k):
        topic_terms.append([(reader.read_string(), reader.read_float64())
                            for _ in range(reader.read_uint32())])
    train_ids = [reader.read_string() for _ in range(reader.read_uint64())]
    train_labels = reader.read_int64_array()
    objective_history = reader.read_float64_array()
    reader.finish()

    LOGGER.info("Loaded %d-topic model from %s.", k, path)
    return TopicModel(k, centroids, topic_terms, vocabulary, backend,
                      header["seed"], header["fitted_on"], train_ids,
                      train_labels, objective_history)
