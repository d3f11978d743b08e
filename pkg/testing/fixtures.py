"""Builders for small, deterministic test inputs."""

import csv
import datetime
import json
import os
import tempfile

import numpy as np
import pytz

from corpus.reports import BugReport
from corpus.reports import Resolution
import settings

COLUMNS = settings.DEFAULT_COLUMNS

# SentiWordNet 3.0 layout: POS, ID, PosScore, NegScore, SynsetTerms, Gloss.
TOY_LEXICON_LINES = [
    "# SentiWordNet toy excerpt",
    "# POS\tID\tPosScore\tNegScore\tSynsetTerms\tGloss",
    "a\t00001740\t0.125\t0\table#1\t(usually followed by `to') having the "
    "necessary means",
    "a\t00002098\t0\t0.75\tunable#1\tnot having the necessary means",
    "n\t00100001\t0\t0.625\tcrash#1 clang#2\ta loud noise",
    "v\t00100002\t0\t0.375\tcrash#2\tfall or come down violently",
    "a\t00100003\t0.75\t0\tgood#1 great#3\thaving desirable qualities",
    "a\t00100004\t0.25\t0\tgood#2\tmorally admirable",
    "a\t00100005\t0\t0.625\tbad#1\thaving undesirable qualities",
    "n\t00100006\t0\t0.5\terror#1 mistake#1\ta wrong action",
    "n\t00100007\t0.5\t0\tfix#1 repair#1\tthe act of putting right",
    "a\t00100008\t0.375\t0.125\tannoying#1\tcausing irritation",
    "n\t00100009\t0.5\t0\tbig_deal#1\tsomething important",
    "v\t00100010\t0\t0.25\tfail#1\tbe unsuccessful",
    "",
    "\t\t\t\t\t#",
]

GOOD_WORDS = ["good", "great", "fix", "repair", "able"]
BAD_WORDS = ["crash", "error", "bad", "fail", "unable", "mistake"]
NEUTRAL_WORDS = ["editor", "view", "workspace", "plugin", "button", "menu",
                 "dialog", "preference", "build", "debugger", "launch",
                 "toolbar", "resource", "project", "window"]
TOPIC_WORDS = [
    ["compiler", "syntax", "parser", "token", "grammar"],
    ["install", "update", "feature", "site", "bundle"],
    ["help", "document", "index", "search", "page"],
]

RESOLUTION_MIX = [
    (Resolution.FIXED, 0.57), (Resolution.WONTFIX, 0.12),
    (Resolution.DUPLICATE, 0.12), (Resolution.WORKSFORME, 0.09),
    (Resolution.INVALID, 0.10),
]


def utc(year, month, day, hour=0, minute=0):
    return datetime.datetime(year, month, day, hour, minute, tzinfo=pytz.utc)


def temp_path(name):
    """A path named ``name`` inside a fresh temporary directory."""
    return os.path.join(tempfile.mkdtemp(), name)


def write_lines(path, lines):
    with open(path, "w", encoding="utf-8") as stream:
        stream.write("\n".join(lines) + "\n")
    return path


def write_toy_lexicon(path=None):
    return write_lines(path or temp_path("swn.txt"), TOY_LEXICON_LINES)


def write_corpus_csv(path, rows, columns=None, delimiter=","):
    """Writes dict ``rows`` keyed by ColumnMapping field names as an export
    with the EclipsePlatform column names.
    """
    columns = columns or COLUMNS
    fields = ["id", "description", "priority", "created", "resolved",
              "resolution", "status"]
    with open(path, "w", encoding="utf-8", newline="") as stream:
        writer = csv.writer(stream, delimiter=delimiter)
        writer.writerow([columns[field] for field in fields])
        for row in rows:
            writer.writerow([row.get(field, "") for field in fields])
    return path


def report(report_id, created, resolved=None, resolution=Resolution.FIXED,
           description="", priority=3):
    return BugReport(report_id, description, priority, created,
                     resolved_at=resolved, resolution=resolution)


def toy_reports(count, hours=None, resolutions=None):
    """``count`` resolved reports filed one day apart. Report ``i`` takes
    ``hours[i]`` hours to resolve (default 10 * (i + 1)).
    """
    reports = []
    for i in range(count):
        created = utc(2001, 1, 1) + datetime.timedelta(days=i)
        duration = hours[i] if hours is not None else 10.0 * (i + 1)
        resolution = (resolutions[i] if resolutions is not None
                      else Resolution.FIXED)
        reports.append(report(
            str(i + 1), created, created + datetime.timedelta(hours=duration),
            resolution=resolution))
    return reports


def synthetic_rows(count, seed=7, noise=True):
    """Rows of an export in which negative, high-priority reports resolve
    quickly and positive, low-priority reports take long, so learners have a
    signal to find.

    Without ``noise`` a report's duration depends only on its mood: every
    negative report takes 20.5 hours and every positive one 600.5 hours.
    """
    rng = np.random.RandomState(seed)
    labels = [label for label, _ in RESOLUTION_MIX]
    weights = np.array([weight for _, weight in RESOLUTION_MIX])
    weights /= weights.sum()

    rows = []
    start = utc(2001, 10, 10)
    for i in range(count):
        priority = int(rng.choice([1, 2, 3, 3, 3, 4, 5]))
        topic = rng.randint(len(TOPIC_WORDS))
        negative = rng.rand() < 0.5
        mood = BAD_WORDS if negative else GOOD_WORDS
        words = list(rng.choice(NEUTRAL_WORDS, 4)) \
            + list(rng.choice(TOPIC_WORDS[topic], 3)) \
            + list(rng.choice(mood, 1 + rng.randint(3)))
        rng.shuffle(words)

        scale = 20.0 * priority * (1.0 if negative else 6.0)
        hours = float(rng.exponential(scale)) + 0.5
        if not noise:
            hours = 20.5 if negative else 600.5
        created = start + datetime.timedelta(hours=int(6 * i))
        resolved = created + datetime.timedelta(seconds=int(hours * 3600))
        rows.append({
            "id": str(100000 + i),
            "description": "The " + " ".join(words) + ".",
            "priority": "P{}".format(priority),
            "created": created.strftime("%Y-%m-%d %H:%M:%S +0000"),
            "resolved": resolved.strftime("%Y-%m-%d %H:%M:%S +0000"),
            "resolution": labels[rng.choice(len(labels), p=weights)].value,
            "status": "CLOSED",
        })
    return rows


def two_cluster_points(count, seed=0, offset=4.0):
    """Two Gaussian blobs in 2-D; class 1 is the smaller."""
    rng = np.random.RandomState(seed)
    majority = rng.randn(count, 2)
    minority = rng.randn(max(2, count // 3), 2) + offset
    features = np.vstack([majority, minority])
    classes = np.array([0] * len(majority) + [1] * len(minority))
    return features, classes


def write_run_config(directory, rows=None, **overrides):
    """Writes a toy export, lexicon and a fast run configuration into
    ``directory`` and returns the configuration path. ``overrides`` replace
    top-level configuration sections.
    """
    corpus = write_corpus_csv(os.path.join(directory, "corpus.csv"),
                              rows if rows is not None
                              else synthetic_rows(60))
    lexicon = write_toy_lexicon(os.path.join(directory, "swn.txt"))
    configuration = {
        "paths": {
            "corpus": os.path.basename(corpus),
            "lexicon": os.path.basename(lexicon),
            "output_dir": "out",
        },
        "topics": {"k": 3, "embedding": {"dimension": 16}},
        "train": {"epochs": 5, "batch_size": 16, "learning_rate": 0.01},
        "models": {"hidden": [8], "filters": 4, "smote_neighbors": 3},
        "seed": 42,
    }
    configuration.update(overrides)
    path = os.path.join(directory, "run_config.json")
    with open(path, "w", encoding="utf-8") as stream:
        json.dump(configuration, stream, indent=2, sort_keys=True)
    return path
