"""Bug reports parsed from an issue-tracker export.

The export is delimited text with a header row. A ``ColumnMapping`` names the
columns that hold each ``BugReport`` field; rows whose timestamps cannot be
used are rejected and counted in an ``IngestSummary``.
"""

from collections import namedtuple
import datetime
from enum import Enum
import logging

import pandas as pd
import pytz

from errors import ConfigurationError
from errors import DataError
import settings

LOGGER = logging.getLogger(__name__)

DEFAULT_PRIORITY = 3


class Resolution(Enum):
    """Final resolution labels of the Eclipse Bugzilla export."""
    FIXED = "FIXED"
    WONTFIX = "WONTFIX"
    DUPLICATE = "DUPLICATE"
    WORKSFORME = "WORKSFORME"
    NDUPLICATE = "NDUPLICATE"
    INVALID = "INVALID"
    NOT_ECLIPSE = "NOT_ECLIPSE"


class TimestampFormat(Enum):
    """How timestamp columns are written in the export."""
    ISO8601 = "ISO8601"
    EPOCH_SECONDS = "EPOCH_SECONDS"


class BugReport(object):
    """One issue-tracker record.

    Attributes:
        id: Identifier, unique within a corpus.
        description: Free text written by the reporter.
        priority: Numeric priority 1 (P1) to 5 (P5).
        priority_imputed: True when the export had no usable priority and
            ``DEFAULT_PRIORITY`` was substituted.
        created_at: Time the report was filed. Timezone-aware UTC.
        resolved_at: Time a resolution was assigned, or None. Never earlier
            than ``created_at``.
        resolution: A ``Resolution``, or None while unresolved.
        status: Tracker status string, e.g. "CLOSED".
    """

    def __init__(self, id, description, priority, created_at, resolved_at=None,  # pylint: disable=redefined-builtin,too-many-arguments
                 resolution=None, status="", priority_imputed=False):
        assert resolved_at is None or resolved_at >= created_at
        self.id = id  # pylint: disable=invalid-name
        self.description = description
        self.priority = priority
        self.priority_imputed = priority_imputed
        self.created_at = created_at
        self.resolved_at = resolved_at
        self.resolution = resolution
        self.status = status

    def __eq__(self, other):
        return (
            isinstance(other, BugReport)
            and self.id == other.id
            and self.description == other.description
            and self.priority == other.priority
            and self.priority_imputed == other.priority_imputed
            and self.created_at == other.created_at
            and self.resolved_at == other.resolved_at
            and self.resolution == other.resolution
            and self.status == other.status
        )

    def __repr__(self):
        return "BugReport(id={!r}, created_at={}, resolution={})".format(
            self.id, self.created_at.isoformat(),
            self.resolution.value if self.resolution else None)


class ColumnMapping(object):
    """Names the export columns holding each BugReport field.

    Attributes:
        id, description, priority, created, resolved, resolution: Column
            names, all required.
        status: Column name for the tracker status, or None.
        delimiter: Field delimiter of the export.
        timestamp_format: A ``TimestampFormat``.
    """

    REQUIRED = ("id", "description", "priority", "created", "resolved",
                "resolution")

    def __init__(self, id=settings.DEFAULT_COLUMNS["id"],  # pylint: disable=redefined-builtin,too-many-arguments
                 description=settings.DEFAULT_COLUMNS["description"],
                 priority=settings.DEFAULT_COLUMNS["priority"],
                 created=settings.DEFAULT_COLUMNS["created"],
                 resolved=settings.DEFAULT_COLUMNS["resolved"],
                 resolution=settings.DEFAULT_COLUMNS["resolution"],
                 status=settings.DEFAULT_COLUMNS["status"],
                 delimiter=",", timestamp_format=TimestampFormat.ISO8601):
        self.id = id  # pylint: disable=invalid-name
        self.description = description
        self.priority = priority
        self.created = created
        self.resolved = resolved
        self.resolution = resolution
        self.status = status
        self.delimiter = delimiter
        self.timestamp_format = timestamp_format

    @classmethod
    def from_json(cls, configuration):
        """Factory for creating a ColumnMapping from JSON configuration. Keys
        left out keep the EclipsePlatform defaults.
        """
        configuration = dict(configuration or {})
        if "timestamp_format" in configuration:
            try:
                configuration["timestamp_format"] = TimestampFormat(
                    configuration["timestamp_format"])
            except ValueError:
                raise ConfigurationError(
                    "Unknown timestamp_format {!r}.".format(
                        configuration["timestamp_format"]))
        unknown = set(configuration) - set(cls().to_json())
        if unknown:
            raise ConfigurationError(
                "Unknown column mapping keys: {}.".format(sorted(unknown)))
        return cls(**configuration)

    def to_json(self):
        return {
            "id": self.id,
            "description": self.description,
            "priority": self.priority,
            "created": self.created,
            "resolved": self.resolved,
            "resolution": self.resolution,
            "status": self.status,
            "delimiter": self.delimiter,
            "timestamp_format": self.timestamp_format.value,
        }


class IngestSummary(object):
    """Counts gathered while ingesting an export.

    Attributes:
        rows_read: Data rows found in the export.
        reports: Rows that became a BugReport.
        rejected_timestamps: Rows with a missing or unparseable creation time
            or an unparseable resolution time.
        rejected_order: Rows resolved before they were created.
        rejected_ids: Rows with an empty or repeated id.
        unknown_resolutions: Rows whose resolution label is not a
            ``Resolution``; kept as unresolved.
        imputed_priorities: Rows given ``DEFAULT_PRIORITY``.
    """

    FIELDS = ("rows_read", "reports", "rejected_timestamps", "rejected_order",
              "rejected_ids", "unknown_resolutions", "imputed_priorities")

    def __init__(self, **counts):
        for field in self.FIELDS:
            setattr(self, field, counts.get(field, 0))

    @property
    def rejected(self):
        return self.rejected_timestamps + self.rejected_order \
            + self.rejected_ids

    def to_json(self):
        return {field: getattr(self, field) for field in self.FIELDS}

    @classmethod
    def from_json(cls, configuration):
        return cls(**configuration)


ParsedCorpus = namedtuple('ParsedCorpus', ('reports', 'summary'))


def report_sort_key(report):
    """Chronological order with ties broken by ascending id (numeric ids
    compare as numbers).
    """
    if report.id.isdigit():
        id_key = (0, int(report.id), report.id)
    else:
        id_key = (1, 0, report.id)
    return (report.created_at, id_key)


def parse_priority(value):
    """Converts "P1".."P5" (or "1".."5") to an int. Returns None when the
    value is not a priority.
    """
    value = value.strip().upper()
    if value.startswith("P"):
        value = value[1:]
    if value in ("1", "2", "3", "4", "5"):
        return int(value)
    return None


def parse_resolution(value):
    """Converts a resolution label to a ``Resolution``. Returns None for an
    empty or unrecognized label.
    """
    value = value.strip().upper().replace(" ", "_")
    try:
        return Resolution(value)
    except ValueError:
        return None


def parse_timestamps(values, timestamp_format):
    """Parses a column of timestamps to UTC.

    Returns:
        A list holding a timezone-aware UTC datetime, None for an empty cell,
        or False for a cell that could not be parsed.
    """
    values = pd.Series(values, dtype=object).fillna("").astype(str).str.strip()
    empty = values == ""
    if timestamp_format == TimestampFormat.EPOCH_SECONDS:
        numbers = pd.to_numeric(values.where(~empty), errors="coerce")
        parsed = pd.to_datetime(numbers, unit="s", utc=True, errors="coerce")
    else:
        parsed = pd.to_datetime(values.where(~empty), utc=True,
                                errors="coerce", format="ISO8601")
        # Offsets written with a space, e.g. "2001-10-10 22:37:00 -0400".
        retry = parsed.isnull() & ~empty
        if retry.any():
            parsed[retry] = pd.to_datetime(values[retry], utc=True,
                                           errors="coerce", format="mixed")

    result = []
    for is_empty, stamp in zip(empty, parsed):
        if is_empty:
            result.append(None)
        elif pd.isnull(stamp):
            result.append(False)
        else:
            result.append(stamp.to_pydatetime().replace(tzinfo=pytz.utc))
    return result


def _read_table(source, mapping):
    try:
        table = pd.read_csv(source, sep=mapping.delimiter, dtype=str,
                            keep_default_na=False, quotechar='"')
    except pd.errors.EmptyDataError:
        raise DataError("Corpus file {} is empty.".format(source))
    except (IOError, OSError) as error:
        raise ConfigurationError("Cannot read corpus file {}: {}".format(
            source, error))

    wanted = [getattr(mapping, name) for name in mapping.REQUIRED]
    if mapping.status is not None:
        wanted.append(mapping.status)
    missing = [column for column in wanted if column not in table.columns]
    if missing:
        raise ConfigurationError(
            "Corpus file {} has no column(s) {}; found {}.".format(
                source, missing, list(table.columns)))
    if table.empty:
        raise DataError("Corpus file {} has a header but no rows.".format(
            source))
    return table


def parse_corpus(source, mapping):
    """Parses an export into BugReports sorted by ``report_sort_key``.

    Args:
        source: Path of the delimited export.
        mapping: The ColumnMapping for the export.

    Returns:
        ParsedCorpus of the sorted reports and the IngestSummary.
    """
    LOGGER.info("Parsing corpus %s.", source)
    table = _read_table(source, mapping)
    summary = IngestSummary(rows_read=len(table))

    created = parse_timestamps(table[mapping.created], mapping.timestamp_format)
    resolved = parse_timestamps(table[mapping.resolved],
                                mapping.timestamp_format)
    statuses = (table[mapping.status] if mapping.status is not None
                else [""] * len(table))

    reports = []
    seen_ids = set()
    rows = zip(table[mapping.id], table[mapping.description],
               table[mapping.priority], created, resolved,
               table[mapping.resolution], statuses)
    for report_id, description, priority, created_at, resolved_at, \
            resolution, status in rows:
        report_id = report_id.strip()
        if not report_id or report_id in seen_ids:
            summary.rejected_ids += 1
            continue
        if created_at is None or created_at is False or resolved_at is False:
            summary.rejected_timestamps += 1
            continue
        if resolved_at is not None and resolved_at < created_at:
            summary.rejected_order += 1
            continue
        seen_ids.add(report_id)

        parsed_priority = parse_priority(priority)
        imputed = parsed_priority is None
        if imputed:
            summary.imputed_priorities += 1
            parsed_priority = DEFAULT_PRIORITY

        parsed_resolution = parse_resolution(resolution)
        if parsed_resolution is None and resolution.strip():
            summary.unknown_resolutions += 1

        reports.append(BugReport(
            report_id, description, parsed_priority, created_at,
            resolved_at=resolved_at, resolution=parsed_resolution,
            status=status.strip(), priority_imputed=imputed))

    reports.sort(key=report_sort_key)
    summary.reports = len(reports)

    LOGGER.info("Parsed %d reports from %d rows.", summary.reports,
                summary.rows_read)
    if summary.rejected:
        LOGGER.warning(
            "Rejected %d rows: %d bad timestamps, %d resolved before "
            "created, %d empty or repeated ids.", summary.rejected,
            summary.rejected_timestamps, summary.rejected_order,
            summary.rejected_ids)
    if summary.unknown_resolutions:
        LOGGER.warning("%d rows had an unknown resolution label.",
                       summary.unknown_resolutions)
    if summary.imputed_priorities:
        LOGGER.warning("Imputed P%d for %d rows without a priority.",
                       DEFAULT_PRIORITY, summary.imputed_priorities)
    return ParsedCorpus(reports, summary)


def epoch_microseconds(timestamp):
    """Microseconds since the Unix epoch for a UTC datetime."""
    delta = timestamp - datetime.datetime(1970, 1, 1, tzinfo=pytz.utc)
    return (delta.days * 86400 + delta.seconds) * 1000000 + delta.microseconds


def from_epoch_microseconds(value):
    """Inverse of ``epoch_microseconds``."""
    return datetime.datetime(1970, 1, 1, tzinfo=pytz.utc) \
        + datetime.timedelta(microseconds=int(value))
