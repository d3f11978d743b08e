"""The normalized corpus cache (BDCORP/1) written by ingest so later commands
never re-parse the export.
"""

from collections import namedtuple
import logging

from corpus.reports import BugReport
from corpus.reports import IngestSummary
from corpus.reports import Resolution
from corpus.reports import epoch_microseconds
from corpus.reports import from_epoch_microseconds
from corpus.split import CorpusSplit
from storage.binary_format import BinaryReader
from storage.binary_format import BinaryWriter

LOGGER = logging.getLogger(__name__)

CORPUS_MAGIC = "BDCORP/1"

CorpusCache = namedtuple('CorpusCache', ('reports', 'split', 'summary'))


def save_corpus(path, reports, split, summary):
    """Writes reports, their split and the ingest summary to ``path``."""
    writer = BinaryWriter(CORPUS_MAGIC)
    writer.write_json(summary.to_json())

    writer.write_uint64(len(reports))
    for report in reports:
        writer.write_string(report.id)
        writer.write_string(report.description)
        writer.write_uint32(report.priority)
        writer.write_bool(report.priority_imputed)
        writer.write_int64(epoch_microseconds(report.created_at))
        writer.write_bool(report.resolved_at is not None)
        if report.resolved_at is not None:
            writer.write_int64(epoch_microseconds(report.resolved_at))
        writer.write_optional_string(
            report.resolution.value if report.resolution else None)
        writer.write_string(report.status)

    writer.write_json({
        "train_ids": list(split.train_ids),
        "test_ids": list(split.test_ids),
        "dropped_labels": sorted(label.value
                                 for label in split.dropped_labels),
    })
    writer.write_bool(split.short_long_threshold_hours is not None)
    if split.short_long_threshold_hours is not None:
        writer.write_float64(split.short_long_threshold_hours)
    writer.save(path)
    LOGGER.info("Cached %d reports to %s.", len(reports), path)


def load_corpus(path):
    """Reads a cache written by ``save_corpus``.

    Returns:
        CorpusCache of the reports, the CorpusSplit and the IngestSummary.
    """
    reader = BinaryReader.load(path, CORPUS_MAGIC)
    summary = IngestSummary.from_json(reader.read_json())

    reports = []
    for _ in range(reader.read_uint64()):
        report_id = reader.read_string()
        description = reader.read_string()
        priority = reader.read_uint32()
        priority_imputed = reader.read_bool()
        created_at = from_epoch_microseconds(reader.read_int64())
        resolved_at = None
        if reader.read_bool():
            resolved_at = from_epoch_microseconds(reader.read_int64())
        resolution = reader.read_optional_string()
        status = reader.read_string()
        reports.append(BugReport(
            report_id, description, priority, created_at,
            resolved_at=resolved_at,
            resolution=Resolution(resolution) if resolution else None,
            status=status, priority_imputed=priority_imputed))

    split_json = reader.read_json()
    threshold = reader.read_float64() if reader.read_bool() else None
    reader.finish()

    split = CorpusSplit(
        split_json["train_ids"], split_json["test_ids"], threshold,
        [Resolution(label) for label in split_json["dropped_labels"]])
    LOGGER.info("Loaded %d cached reports from %s.", len(reports), path)
    return CorpusCache(reports, split, summary)
