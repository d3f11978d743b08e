"""Tests for the stopwords module."""
# pylint: disable=missing-docstring

import unittest

from errors import ConfigurationError
from testing.fixtures import temp_path
from testing.fixtures import write_lines
from textprep.stopwords import load_stopwords


class TestLoadStopwords(unittest.TestCase):
    """Tests for load_stopwords."""

    def test_builtin(self):
        words = load_stopwords()
        self.assertEqual(len(words), 127)
        for word in ["the", "i", "on"]:
            self.assertIn(word, words)

    def test_custom_file_lowercased_without_comments(self):
        path = write_lines(temp_path("stop.txt"),
                           ["# header", "Foo", "  bar  # trailing", ""])
        self.assertEqual(load_stopwords(path), frozenset(["foo", "bar"]))

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            load_stopwords(temp_path("missing.txt"))
