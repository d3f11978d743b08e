"""Document embeddings for topic modeling.

HASHED_TFIDF hashes every term into ``dimension`` signed buckets (MurmurHash3
with ``hash_seed``), weights bucket counts by a per-bucket inverse document
frequency learned on the training streams and L2-normalizes the result.
EXTERNAL_VECTORS reads precomputed vectors (e.g. sentence-transformer output)
keyed by report id.
"""

from collections import Counter
from enum import Enum
import logging

import numpy as np
import pandas as pd
from sklearn.utils import murmurhash3_32

from errors import ConfigurationError
from errors import DataError

LOGGER = logging.getLogger(__name__)

MIN_DIMENSION = 8


class EmbeddingKind(Enum):
    HASHED_TFIDF = "HASHED_TFIDF"
    EXTERNAL_VECTORS = "EXTERNAL_VECTORS"


def hash_term(term, hash_seed):
    """(bucket, sign) of ``term``. Bucket indices are taken modulo the
    dimension by the caller.
    """
    value = murmurhash3_32(term, seed=hash_seed)
    return abs(value), (1.0 if value >= 0 else -1.0)


def unit(vector):
    """``vector`` scaled to unit Euclidean norm; zero vectors stay zero."""
    norm = np.linalg.norm(vector)
    if norm == 0.0:
        return vector
    return vector / norm


def load_vectors(path):
    """Reads an EXTERNAL_VECTORS file.

    The first line is "id,<dimension>"; each following line is a report id
    and ``dimension`` comma-separated floats.

    Returns:
        (dimension, dict of report id to unit-norm vector)
    """
    try:
        with open(path, encoding="utf-8") as stream:
            header = stream.readline().strip().split(",")
        table = pd.read_csv(path, header=None, skiprows=1, dtype={0: str},
                            keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise DataError("Vector file {} has no vectors.".format(path))
    except (IOError, OSError) as error:
        raise ConfigurationError("Cannot read vector file {}: {}".format(
            path, error))

    if len(header) != 2 or header[0] != "id" or not header[1].isdigit():
        raise DataError(
            "Vector file {} must start with an \"id,<dimension>\" header; "
            "got {!r}.".format(path, ",".join(header)))
    dimension = int(header[1])
    if table.shape[1] != dimension + 1:
        raise DataError(
            "Vector file {} declares dimension {} but rows hold {} "
            "values.".format(path, dimension, table.shape[1] - 1))

    values = table.iloc[:, 1:].to_numpy(dtype=np.float64)
    vectors = {str(report_id): unit(row)
               for report_id, row in zip(table.iloc[:, 0], values)}
    LOGGER.info("Loaded %d external vectors of dimension %d from %s.",
                len(vectors), dimension, path)
    return dimension, vectors


class EmbeddingBackend(object):
    """Maps a TokenStream to a vector.

    Attributes:
        kind: An ``EmbeddingKind``.
        dimension: Length of every embedding.
        hash_seed: MurmurHash3 seed for HASHED_TFIDF.
        idf_weights: Per-bucket inverse document frequencies, or None before
            ``fit``.
        vectors_path: EXTERNAL_VECTORS file.
    """

    def __init__(self, kind=EmbeddingKind.HASHED_TFIDF, dimension=256,
                 hash_seed=42, idf_weights=None, vectors_path=None):
        self.kind = kind
        self.hash_seed = hash_seed
        self.vectors_path = vectors_path
        self._vectors = None
        if kind == EmbeddingKind.EXTERNAL_VECTORS:
            if vectors_path is None:
                raise ConfigurationError(
                    "EXTERNAL_VECTORS needs a vectors file.")
            dimension, self._vectors = load_vectors(vectors_path)
        if dimension < MIN_DIMENSION:
            raise ConfigurationError(
                "Embedding dimension must be at least {}; got {}.".format(
                    MIN_DIMENSION, dimension))
        self.dimension = dimension
        self.idf_weights = (None if idf_weights is None
                            else np.asarray(idf_weights, dtype=np.float64))

    @classmethod
    def from_json(cls, configuration):
        """Factory for creating an EmbeddingBackend from the "embedding" part
        of the "topics" section of a run configuration.
        """
        configuration = configuration or {}
        try:
            kind = EmbeddingKind(configuration.get("kind", "HASHED_TFIDF"))
        except ValueError:
            raise ConfigurationError("Unknown embedding kind {!r}.".format(
                configuration.get("kind")))
        return cls(kind=kind,
                   dimension=int(configuration.get("dimension", 256)),
                   hash_seed=int(configuration.get("hash_seed", 42)),
                   vectors_path=configuration.get("vectors"))

    def to_json(self):
        return {
            "kind": self.kind.value,
            "dimension": self.dimension,
            "hash_seed": self.hash_seed,
            "vectors": self.vectors_path,
        }

    def _buckets(self, tokens):
        """Signed term counts per bucket, as a dict."""
        buckets = Counter()
        for term, count in Counter(tokens).items():
            bucket, sign = hash_term(term, self.hash_seed)
            buckets[bucket % self.dimension] += sign * count
        return buckets

    def fit(self, streams):
        """Learns per-bucket idf over training ``streams``:
        ln((1 + N) / (1 + df)) + 1, where df counts documents with at least
        one term in the bucket. A no-op for EXTERNAL_VECTORS.
        """
        if self.kind != EmbeddingKind.HASHED_TFIDF:
            return self
        document_frequency = np.zeros(self.dimension)
        for stream in streams:
            buckets = set(hash_term(term, self.hash_seed)[0] % self.dimension
                          for term in set(stream.tokens))
            for bucket in buckets:
                document_frequency[bucket] += 1
        count = len(streams)
        self.idf_weights = np.log((1.0 + count)
                                  / (1.0 + document_frequency)) + 1.0
        LOGGER.debug("Fitted idf over %d documents.", count)
        return self

    def embed(self, stream):
        """Unit-norm embedding of ``stream``; the zero vector for an empty
        HASHED_TFIDF stream.
        """
        if self.kind == EmbeddingKind.EXTERNAL_VECTORS:
            vector = self._vectors.get(str(stream.report_id))
            if vector is None:
                raise DataError("No external vector for report {!r}.".format(
                    stream.report_id))
            return vector

        assert self.idf_weights is not None, "Backend is not fitted."
        vector = np.zeros(self.dimension)
        for bucket, count in self._buckets(stream.tokens).items():
            vector[bucket] += count * self.idf_weights[bucket]
        return unit(vector)

    def embed_all(self, streams):
        """Embeddings of ``streams`` as rows of a matrix."""
        matrix = np.zeros((len(streams), self.dimension))
        for row, stream in enumerate(streams):
            matrix[row] = self.embed(stream)
        return matrix
