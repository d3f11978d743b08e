"""Stop-word lists: one word per line, UTF-8, "#" starts a comment."""

import logging
import os

from errors import ConfigurationError

LOGGER = logging.getLogger(__name__)

BUILTIN_STOPWORDS = os.path.join(
    os.path.dirname(os.path.abspath(__file__)), "data",
    "stopwords_english.txt")


def load_stopwords(source=None):
    """Loads a stop-word set.

    Args:
        source: Path of a stop-word file, or None for the builtin 127-word
            English list.

    Returns:
        frozenset of lowercase stop words. An empty file gives an empty set.
    """
    path = source or BUILTIN_STOPWORDS
    try:
        with open(path, encoding="utf-8") as stream:
            lines = stream.read().splitlines()
    except (IOError, OSError, UnicodeDecodeError) as error:
        raise ConfigurationError(
            "Cannot read stop-word file {}: {}".format(path, error))

    words = set()
    for line in lines:
        word = line.split("#", 1)[0].strip().lower()
        if word:
            words.add(word)
    LOGGER.debug("Loaded %d stop words from %s.", len(words), path)
    return frozenset(words)
