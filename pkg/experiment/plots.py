"""Static figures: the emotionality scatter with its SVR line and the
duration histogram. Data files are always written; images only on request.
"""

import logging

import matplotlib
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure
import numpy as np

LOGGER = logging.getLogger(__name__)

DEFAULT_BINS = 40
HASH_SALT = "bugdestiny"

# Without these the rendered files embed the render date and differ per run.
_METADATA = {
    "png": {"Software": None},
    "svg": {"Date": None, "Creator": None},
}


def duration_histogram(durations, bins=DEFAULT_BINS):
    """Counts of ``durations`` (hours) over log-spaced bins spanning the
    positive durations. Zero durations count in the first bin.

    Returns:
        (bin edges, counts), with len(edges) == len(counts) + 1 and counts
        summing to len(durations).
    """
    durations = np.asarray(durations, dtype=np.float64)
    positive = durations[durations > 0.0]
    if positive.size == 0:
        return np.array([0.0, 1.0]), np.array([durations.size])
    low, high = positive.min(), positive.max()
    if low == high:
        high = low * 10.0
    edges = np.logspace(np.log10(low), np.log10(high), bins + 1)
    edges[0], edges[-1] = low, high
    counts, _ = np.histogram(np.clip(durations, low, high), bins=edges)
    return edges, counts


def _save(figure, path, image_format):
    FigureCanvasAgg(figure)
    with matplotlib.rc_context({"svg.hashsalt": HASH_SALT}):
        figure.savefig(path, format=image_format,
                       metadata=_METADATA[image_format])
    LOGGER.info("Rendered %s.", path)


def render_scatter(path, image_format, emotionality, hours, slope, intercept):  # pylint: disable=too-many-arguments
    figure = Figure(figsize=(6, 4))
    axes = figure.add_subplot(1, 1, 1)
    axes.scatter(emotionality, hours, s=4, alpha=0.5)
    if len(emotionality):
        line_x = np.linspace(min(emotionality), max(emotionality), 2)
        axes.plot(line_x, slope * line_x + intercept, color="black")
    axes.set_xlabel("Emotionality")
    axes.set_ylabel("Hours to resolution")
    _save(figure, path, image_format)


def render_histogram(path, image_format, edges, counts, threshold=None):  # pylint: disable=too-many-arguments
    figure = Figure(figsize=(6, 4))
    axes = figure.add_subplot(1, 1, 1)
    axes.bar(edges[:-1], counts, width=np.diff(edges), align="edge")
    if edges[0] > 0.0:
        axes.set_xscale("log")
    if threshold is not None:
        axes.axvline(threshold, color="black", linestyle="--")
    axes.set_xlabel("Hours to resolution")
    axes.set_ylabel("Reports")
    _save(figure, path, image_format)
