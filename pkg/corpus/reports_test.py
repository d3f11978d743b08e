"""Tests for the reports module."""
# pylint: disable=missing-docstring

import unittest

from corpus.reports import ColumnMapping
from corpus.reports import Resolution
from corpus.reports import TimestampFormat
from corpus.reports import epoch_microseconds
from corpus.reports import from_epoch_microseconds
from corpus.reports import parse_corpus
from corpus.reports import parse_priority
from corpus.reports import parse_resolution
from errors import ConfigurationError
from errors import DataError
from testing.fixtures import temp_path
from testing.fixtures import utc
from testing.fixtures import write_corpus_csv
from testing.fixtures import write_lines


def _row(report_id, created, resolved, resolution="FIXED", priority="P3",
         description="Editor crashed"):
    return {"id": report_id, "description": description, "priority": priority,
            "created": created, "resolved": resolved,
            "resolution": resolution, "status": "CLOSED"}


class TestParseCorpus(unittest.TestCase):
    """Tests for parse_corpus."""

    def setUp(self):
        self.mapping = ColumnMapping()

    def test_well_formed_rows_sorted_by_creation(self):
        path = write_corpus_csv(temp_path("c.csv"), [
            _row("3", "2001-03-01T00:00:00Z", "2001-03-02T00:00:00Z"),
            _row("1", "2001-01-01T00:00:00Z", "2001-01-02T06:00:00Z"),
            _row("2", "2001-02-01 10:00:00 -0400", "2001-02-03 00:00:00 -0400"),
        ])
        result = parse_corpus(path, self.mapping)
        self.assertEqual([r.id for r in result.reports], ["1", "2", "3"])
        self.assertEqual(result.summary.reports, 3)
        self.assertEqual(result.summary.rejected, 0)
        self.assertEqual(result.reports[1].created_at, utc(2001, 2, 1, 14))

    def test_resolved_before_created_rejected(self):
        path = write_corpus_csv(temp_path("c.csv"), [
            _row("1", "2001-01-05T00:00:00Z", "2001-01-02T00:00:00Z"),
            _row("2", "2001-01-01T00:00:00Z", "2001-01-02T00:00:00Z"),
        ])
        result = parse_corpus(path, self.mapping)
        self.assertEqual([r.id for r in result.reports], ["2"])
        self.assertEqual(result.summary.rejected_order, 1)
        self.assertEqual(result.summary.rejected, 1)

    def test_unparseable_timestamp_counted(self):
        path = write_corpus_csv(temp_path("c.csv"), [
            _row("1", "yesterday", "2001-01-02T00:00:00Z"),
            _row("2", "2001-01-01T00:00:00Z", "not a date"),
            _row("3", "2001-01-01T00:00:00Z", ""),
        ])
        result = parse_corpus(path, self.mapping)
        self.assertEqual([r.id for r in result.reports], ["3"])
        self.assertIsNone(result.reports[0].resolved_at)
        self.assertEqual(result.summary.rejected_timestamps, 2)

    def test_repeated_id_rejected(self):
        path = write_corpus_csv(temp_path("c.csv"), [
            _row("1", "2001-01-01T00:00:00Z", "2001-01-02T00:00:00Z"),
            _row("1", "2001-01-03T00:00:00Z", "2001-01-04T00:00:00Z"),
        ])
        result = parse_corpus(path, self.mapping)
        self.assertEqual(len(result.reports), 1)
        self.assertEqual(result.summary.rejected_ids, 1)

    def test_missing_priority_imputed(self):
        path = write_corpus_csv(temp_path("c.csv"), [
            _row("1", "2001-01-01T00:00:00Z", "2001-01-02T00:00:00Z",
                 priority=""),
        ])
        result = parse_corpus(path, self.mapping)
        self.assertEqual(result.reports[0].priority, 3)
        self.assertTrue(result.reports[0].priority_imputed)
        self.assertEqual(result.summary.imputed_priorities, 1)

    def test_unknown_resolution_kept_unresolved(self):
        path = write_corpus_csv(temp_path("c.csv"), [
            _row("1", "2001-01-01T00:00:00Z", "2001-01-02T00:00:00Z",
                 resolution="MOVED"),
        ])
        result = parse_corpus(path, self.mapping)
        self.assertIsNone(result.reports[0].resolution)
        self.assertEqual(result.summary.unknown_resolutions, 1)

    def test_epoch_seconds(self):
        mapping = ColumnMapping(timestamp_format=TimestampFormat.EPOCH_SECONDS)
        path = write_corpus_csv(temp_path("c.csv"), [
            _row("1", "978307200", "978415200"),
        ])
        result = parse_corpus(path, mapping)
        self.assertEqual(result.reports[0].created_at, utc(2001, 1, 1))
        self.assertEqual(result.reports[0].resolved_at, utc(2001, 1, 2, 6))

    def test_custom_delimiter(self):
        mapping = ColumnMapping(delimiter=";")
        path = write_corpus_csv(temp_path("c.csv"), [
            _row("1", "2001-01-01T00:00:00Z", "2001-01-02T00:00:00Z",
                 description="a; quoted, description"),
        ], delimiter=";")
        result = parse_corpus(path, mapping)
        self.assertEqual(result.reports[0].description,
                         "a; quoted, description")

    def test_missing_mapped_column_is_configuration_error(self):
        mapping = ColumnMapping(priority="Importance")
        path = write_corpus_csv(temp_path("c.csv"), [
            _row("1", "2001-01-01T00:00:00Z", "2001-01-02T00:00:00Z"),
        ])
        with self.assertRaises(ConfigurationError) as context:
            parse_corpus(path, mapping)
        self.assertIn("Importance", str(context.exception))

    def test_empty_file_is_fatal(self):
        path = write_lines(temp_path("c.csv"), [])
        with self.assertRaises(DataError):
            parse_corpus(path, self.mapping)

    def test_header_only_is_fatal(self):
        path = write_corpus_csv(temp_path("c.csv"), [])
        with self.assertRaises(DataError):
            parse_corpus(path, self.mapping)


class TestColumnMapping(unittest.TestCase):
    """Tests for ColumnMapping."""

    def test_from_json_defaults(self):
        mapping = ColumnMapping.from_json({"id": "bug_id"})
        self.assertEqual(mapping.id, "bug_id")
        self.assertEqual(mapping.created, "Created_time")
        self.assertEqual(mapping.timestamp_format, TimestampFormat.ISO8601)

    def test_from_json_timestamp_format(self):
        mapping = ColumnMapping.from_json(
            {"timestamp_format": "EPOCH_SECONDS"})
        self.assertEqual(mapping.timestamp_format,
                         TimestampFormat.EPOCH_SECONDS)

    def test_from_json_unknown_key(self):
        with self.assertRaises(ConfigurationError):
            ColumnMapping.from_json({"severity": "Severity"})


class TestParsers(unittest.TestCase):
    """Tests for the field parsers."""

    def test_priority(self):
        self.assertEqual(parse_priority("P1"), 1)
        self.assertEqual(parse_priority(" p5 "), 5)
        self.assertEqual(parse_priority("2"), 2)
        self.assertIsNone(parse_priority("P7"))
        self.assertIsNone(parse_priority(""))

    def test_resolution(self):
        self.assertEqual(parse_resolution("fixed"), Resolution.FIXED)
        self.assertEqual(parse_resolution("NOT_ECLIPSE"),
                         Resolution.NOT_ECLIPSE)
        self.assertIsNone(parse_resolution(""))

    def test_epoch_microseconds_inverse(self):
        stamp = utc(2004, 2, 29, 13, 7)
        self.assertEqual(from_epoch_microseconds(epoch_microseconds(stamp)),
                         stamp)
        self.assertEqual(epoch_microseconds(utc(1970, 1, 1)), 0)
