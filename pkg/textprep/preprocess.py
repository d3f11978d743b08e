"""Normalizes bug descriptions into token streams.

The pipeline order is fixed: lowercase, split on non-alphanumeric boundaries,
optional spelling correction, drop stop words, drop pure numbers, drop short
tokens, then stem (Porter) or lemmatize (WordNet).
"""

from enum import Enum
import logging
import re

from nltk.stem import PorterStemmer
from nltk.stem import WordNetLemmatizer

from errors import ConfigurationError
from textprep.stopwords import load_stopwords

LOGGER = logging.getLogger(__name__)

_TOKEN_BOUNDARY = re.compile(r"[\W_]+", re.UNICODE)


class Normalizer(Enum):
    STEM = "STEM"
    LEMMA = "LEMMA"


class PrepConfig(object):
    """Preprocessing options.

    Attributes:
        normalizer: A ``Normalizer``.
        stopwords: frozenset of words removed from every stream.
        stopwords_source: Path the stop words were read from, or None for the
            builtin list.
        min_token_length: Tokens shorter than this are dropped.
        corrector: Callable mapping a lowercase token to its corrected
            spelling. Identity when None.
    """

    def __init__(self, normalizer=Normalizer.STEM, stopwords_source=None,
                 min_token_length=2, corrector=None, stopwords=None):
        self.normalizer = normalizer
        self.stopwords_source = stopwords_source
        if stopwords is None:
            stopwords = load_stopwords(stopwords_source)
        self.stopwords = frozenset(stopwords)
        self.min_token_length = min_token_length
        self.corrector = corrector
        self._cache = {}
        self._normalize = self._build_normalizer(normalizer)

    @classmethod
    def from_json(cls, configuration):
        """Factory for creating a PrepConfig from the "text" section of a run
        configuration.
        """
        configuration = configuration or {}
        try:
            normalizer = Normalizer(configuration.get("normalizer", "STEM"))
        except ValueError:
            raise ConfigurationError("Unknown normalizer {!r}.".format(
                configuration.get("normalizer")))
        return cls(normalizer=normalizer,
                   stopwords_source=configuration.get("stopwords"),
                   min_token_length=int(
                       configuration.get("min_token_length", 2)))

    def to_json(self):
        return {
            "normalizer": self.normalizer.value,
            "stopwords": self.stopwords_source,
            "min_token_length": self.min_token_length,
        }

    @staticmethod
    def _build_normalizer(normalizer):
        if normalizer == Normalizer.STEM:
            stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
            return stemmer.stem

        lemmatizer = WordNetLemmatizer()
        try:
            lemmatizer.lemmatize("bugs")
        except LookupError as error:
            raise ConfigurationError(
                "LEMMA normalization needs the NLTK WordNet data: {}".format(
                    error))
        return lemmatizer.lemmatize

    def normalize(self, word):
        """Stem or lemma of a lowercase ``word``.

        The normalizer is reapplied until its output stops changing, since
        Porter is not idempotent ("agreed" -> "agre" -> "agr"). Every
        returned form therefore normalizes to itself.
        """
        normalized = self._cache.get(word)
        if normalized is None:
            normalized = word
            while True:
                step = self._normalize(normalized)
                if step == normalized:
                    break
                normalized = step
            self._cache[word] = normalized
        return normalized

    def keeps(self, token):
        """Whether ``token`` survives stop-word, number and length filters."""
        return (len(token) >= self.min_token_length
                and token not in self.stopwords
                and not token.isdigit())


class TokenStream(object):
    """Normalized tokens of one report.

    Attributes:
        report_id: Id of the BugReport.
        tokens: Lowercase normalized tokens, in text order.
        surface: The lowercase word each token was normalized from.
    """

    def __init__(self, report_id, tokens, surface=None):
        self.report_id = report_id
        self.tokens = list(tokens)
        self.surface = list(surface) if surface is not None \
            else list(self.tokens)
        assert len(self.surface) == len(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def __eq__(self, other):
        return (isinstance(other, TokenStream)
                and self.report_id == other.report_id
                and self.tokens == other.tokens
                and self.surface == other.surface)

    def __repr__(self):
        return "TokenStream({!r}, {})".format(self.report_id, self.tokens)


def tokenize(text):
    """Lowercases ``text`` and splits it on non-alphanumeric boundaries."""
    return [token for token in _TOKEN_BOUNDARY.split(text.lower()) if token]


def preprocess(text, config, report_id=None):
    """Runs the preprocessing pipeline over ``text``.

    Args:
        text: Raw description; may be empty.
        config: The PrepConfig.
        report_id: Id recorded on the stream.

    Returns:
        TokenStream. Empty text gives an empty stream.
    """
    tokens = []
    surface = []
    words = tokenize(text or "")
    if config.corrector is not None:
        words = [piece for word in words
                 for piece in tokenize(config.corrector(word))]
    for word in words:
        if not config.keeps(word):
            continue
        token = config.normalize(word)
        # Normalizing can land on a stop word ("wills" -> "will").
        if not config.keeps(token):
            continue
        tokens.append(token)
        surface.append(word)
    return TokenStream(report_id, tokens, surface)


def preprocess_reports(reports, config):
    """TokenStreams for ``reports``, in order."""
    streams = [preprocess(report.description, config, report.id)
               for report in reports]
    empty = sum(1 for stream in streams if not stream.tokens)
    if empty:
        LOGGER.info("%d of %d descriptions have no tokens after "
                    "preprocessing.", empty, len(streams))
    return streams
