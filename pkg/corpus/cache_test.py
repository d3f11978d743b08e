"""Tests for the cache module."""
# pylint: disable=missing-docstring

import unittest

from corpus.cache import load_corpus
from corpus.cache import save_corpus
from corpus.reports import BugReport
from corpus.reports import IngestSummary
from corpus.reports import Resolution
from corpus.split import chronological_split
from errors import ChecksumError
from testing.fixtures import temp_path
from testing.fixtures import toy_reports
from testing.fixtures import utc


class TestCorpusCache(unittest.TestCase):
    """Tests for save_corpus and load_corpus."""

    def setUp(self):
        self.reports = toy_reports(9)
        self.reports.append(BugReport(
            "99", u"naïve ünïcode", 1, utc(2002, 1, 1), status="NEW",
            priority_imputed=True))
        self.split = chronological_split(self.reports).with_threshold(42.5) \
            .with_dropped_labels([Resolution.INVALID])
        self.summary = IngestSummary(rows_read=11, reports=10,
                                     rejected_order=1)

    def test_reads_back(self):
        path = temp_path("corpus.bdcorp")
        save_corpus(path, self.reports, self.split, self.summary)
        cache = load_corpus(path)
        self.assertEqual(cache.reports, self.reports)
        self.assertEqual(cache.split.train_ids, self.split.train_ids)
        self.assertEqual(cache.split.test_ids, self.split.test_ids)
        self.assertEqual(cache.split.short_long_threshold_hours, 42.5)
        self.assertEqual(cache.split.dropped_labels,
                         frozenset([Resolution.INVALID]))
        self.assertEqual(cache.summary.to_json(), self.summary.to_json())

    def test_same_inputs_same_bytes(self):
        first, second = temp_path("a.bdcorp"), temp_path("b.bdcorp")
        save_corpus(first, self.reports, self.split, self.summary)
        save_corpus(second, self.reports, self.split, self.summary)
        with open(first, "rb") as a, open(second, "rb") as b:
            self.assertEqual(a.read(), b.read())

    def test_truncated_rejected(self):
        path = temp_path("corpus.bdcorp")
        save_corpus(path, self.reports, self.split, self.summary)
        with open(path, "rb") as stream:
            data = stream.read()
        with open(path, "wb") as stream:
            stream.write(data[:len(data) // 2])
        with self.assertRaises(ChecksumError):
            load_corpus(path)
