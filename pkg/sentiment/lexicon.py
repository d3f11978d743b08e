"""SentiWordNet-format sentiment lexicon.

Each data line holds POS, ID, PosScore, NegScore, SynsetTerms and Gloss
separated by tabs. SynsetTerms lists space-separated "word#sense" items.
Scores of a word form are averaged over every sense and part of speech it
appears in.
"""

from collections import defaultdict
import logging

import numpy as np

from errors import ConfigurationError
from errors import DataError

LOGGER = logging.getLogger(__name__)


class SentimentLexicon(object):
    """Word form to (positive, negative) score table.

    Attributes:
        entries: Dict of lowercase word form to (pos, neg).
        stem_entries: Dict of normalized form to (pos, neg) averaged over
            every sense of every word with that normalized form.
        malformed_lines: Number of data lines skipped while loading.
        source: Path the lexicon was read from.
    """

    def __init__(self, entries, stem_entries=None, malformed_lines=0,
                 source=None):
        self.entries = dict(entries)
        self.stem_entries = dict(stem_entries or {})
        self.malformed_lines = malformed_lines
        self.source = source

    @property
    def entry_count(self):
        return len(self.entries)

    def lookup(self, word):
        """(pos, neg) of ``word`` ignoring case, or None."""
        return self.entries.get(word.lower())

    def lookup_token(self, token, surface=None):
        """(pos, neg) of a preprocessed token: the normalized form first,
        then an exact match of the token, then of its surface word. None
        when nothing matches.
        """
        scores = self.stem_entries.get(token)
        if scores is None:
            scores = self.entries.get(token)
        if scores is None and surface is not None:
            scores = self.entries.get(surface)
        return scores


def _parse_line(line):
    """Returns [(word, pos, neg), ...] for a data line, or None when the line
    is malformed.
    """
    fields = line.split("\t")
    if len(fields) < 5:
        return None
    try:
        pos, neg = float(fields[2]), float(fields[3])
    except ValueError:
        return None
    if not (0.0 <= pos <= 1.0 and 0.0 <= neg <= 1.0 and pos + neg <= 1.0):
        return None
    terms = fields[4].split()
    if not terms:
        return None
    return [(term.rsplit("#", 1)[0].lower(), pos, neg) for term in terms]


def _means(senses):
    return {word: tuple(float(v) for v in np.mean(scores, axis=0))
            for word, scores in senses.items()}


def load_lexicon(path, normalize=None):
    """Parses a SentiWordNet 3.0 text file.

    Args:
        path: Lexicon file.
        normalize: Callable giving the normalized form (stem or lemma) of a
            lowercase word, used to build ``stem_entries``. Without it only
            exact lookups are possible.

    Returns:
        SentimentLexicon. Multi-word terms ("big_deal") are skipped.
    """
    try:
        with open(path, encoding="utf-8") as stream:
            lines = stream.read().splitlines()
    except (IOError, OSError, UnicodeDecodeError) as error:
        raise ConfigurationError("Cannot read lexicon {}: {}".format(
            path, error))

    senses = defaultdict(list)
    malformed = 0
    for line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parsed = _parse_line(line)
        if parsed is None:
            malformed += 1
            continue
        for word, pos, neg in parsed:
            if "_" in word or not word:
                continue
            senses[word].append((pos, neg))

    if not senses:
        raise DataError("Lexicon {} has zero entries.".format(path))
    if malformed:
        LOGGER.warning("Skipped %d malformed lexicon lines in %s.", malformed,
                       path)

    stem_entries = {}
    if normalize is not None:
        stem_senses = defaultdict(list)
        for word, scores in senses.items():
            stem_senses[normalize(word)].extend(scores)
        stem_entries = _means(stem_senses)

    lexicon = SentimentLexicon(_means(senses), stem_entries, malformed, path)
    LOGGER.info("Loaded %d lexicon entries (%d normalized forms) from %s.",
                lexicon.entry_count, len(stem_entries), path)
    return lexicon
