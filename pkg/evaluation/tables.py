"""Experiment result tables, written as aligned plain text for reading and as
JSON (one metric per key) for tracking across runs.

Each row may carry a reference: the published result for the same model and
feature set, shown alongside for comparison only.
"""

from collections import namedtuple
import logging
import os

import pandas as pd

from utils import canonical_json

LOGGER = logging.getLogger(__name__)

ClassificationRow = namedtuple('ClassificationRow',
                               ('label', 'report', 'reference'))
RegressionRow = namedtuple('RegressionRow', ('label', 'report', 'reference'))

CLASSIFICATION_REFERENCE_KEYS = ("precision", "recall", "f1", "accuracy")
REGRESSION_REFERENCE_KEYS = ("mae", "mse")


def _reference_text(reference, keys, template):
    if reference is None:
        return "-"
    return " / ".join(template.format(reference[key]) for key in keys)


def classification_frame(rows):
    return pd.DataFrame([{
        "Model": row.label,
        "Precision": "{:.4f}".format(row.report.precision),
        "Recall": "{:.4f}".format(row.report.recall),
        "F1 Score": "{:.4f}".format(row.report.f1),
        "Accuracy": "{:.4f}".format(row.report.accuracy),
        "Reference (P / R / F1 / Acc)": _reference_text(
            row.reference, CLASSIFICATION_REFERENCE_KEYS, "{:.2f}"),
    } for row in rows])


def regression_frame(rows):
    return pd.DataFrame([{
        "Model": row.label,
        "Mean Absolute Error": "{:,.2f}".format(row.report.mae),
        "Mean Squared Error": "{:,.2f}".format(row.report.mse),
        "R2": "-" if row.report.r2 is None else "{:.4f}".format(
            row.report.r2),
        "Reference (MAE / MSE)": _reference_text(
            row.reference, REGRESSION_REFERENCE_KEYS, "{:,.0f}"),
    } for row in rows])


def format_table(title, rows):
    """Plain-text table of ClassificationRow or RegressionRow items."""
    if rows and isinstance(rows[0], RegressionRow):
        frame = regression_frame(rows)
    else:
        frame = classification_frame(rows)
    body = frame.to_string(index=False, justify="left")
    return "{}\n{}\n{}\n".format(title, "=" * len(title), body)


def table_json(title, rows, extra=None):
    return {
        "title": title,
        "rows": [{
            "model": row.label,
            "metrics": row.report.to_json(),
            "reference": row.reference,
        } for row in rows],
        "extra": extra or {},
    }


def write_table(directory, name, title, rows, extra=None):  # pylint: disable=too-many-arguments
    """Writes ``<name>.txt`` and ``<name>.json`` under ``directory``.

    Returns:
        (text path, json path)
    """
    text_path = os.path.join(directory, name + ".txt")
    json_path = os.path.join(directory, name + ".json")
    with open(text_path, "w", encoding="utf-8") as stream:
        stream.write(format_table(title, rows))
    with open(json_path, "w", encoding="utf-8") as stream:
        stream.write(canonical_json(table_json(title, rows, extra)) + "\n")
    LOGGER.info("Wrote table %r with %d rows to %s.", title, len(rows),
                text_path)
    return text_path, json_path
