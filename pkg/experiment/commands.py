"""The subcommands. Each takes the effective RunConfig, writes its manifest
before computing anything, rewrites it with digests of what it produced, and
returns a JSON-serializable summary for standard output.
"""

from collections import namedtuple
import logging
import os

import numpy as np
import pandas as pd

from corpus.cache import save_corpus
from corpus.labels import assign_time_classes
from corpus.labels import derive_examples
from corpus.reports import DEFAULT_PRIORITY
from corpus.reports import parse_corpus
from corpus.reports import parse_priority
from corpus.split import chronological_split
from corpus.split import prune_unseen_labels
from errors import ConfigurationError
from errors import DataError
from evaluation.metrics import regression_report
from evaluation.tables import ClassificationRow
from evaluation.tables import RegressionRow
from evaluation.tables import write_table
from experiment import plots
from experiment.config import CLASSIFICATION_TASKS
from experiment.config import Subset
from experiment.config import Task
from experiment.manifest import Manifest
from experiment.pipeline import PreparedCorpus
from experiment.pipeline import classification_data
from experiment.pipeline import classification_grid
from experiment.pipeline import features_for_model
from experiment.pipeline import fit_correlation
from experiment.pipeline import load_cache
from experiment.pipeline import regression_data
from experiment.pipeline import regression_grid
from experiment.pipeline import run_row
from experiment.references import PUBLISHED_CORRELATION_R2
from experiment.references import reference
from features.vectors import FeatureConfig
from features.vectors import Standardizer
from features.vectors import export_features
from learn.persistence import load_model
from learn.trainer import predict
from sentiment.lexicon import load_lexicon
from sentiment.scoring import score_streams
from textprep.preprocess import PrepConfig
from textprep.preprocess import preprocess_reports
from topics.model import assign_topics
from topics.model import load_topic_model
from utils import canonical_json

LOGGER = logging.getLogger(__name__)

TITLES = {
    "time_to_resolution": "Time-to-resolution classification (SHORT / LONG)",
    "time_to_fix": "Time-to-fix classification (SHORT / LONG)",
    "destiny": "Destiny classification (resolution label)",
    "fix_outcome": "Fix-outcome classification (FIXED / NOT_FIXED)",
    "numeric_time_to_resolution": "Time-to-resolution regression (hours)",
    "numeric_time_to_fix": "Time-to-fix regression (hours)",
    "correlation": "Emotionality against time-to-resolution (SVR)",
}

CORRELATION_LABEL = "SVR (Emotionality)"

NewReport = namedtuple('NewReport', ('id', 'description', 'priority'))


def _ensure_directory(path):
    if not os.path.exists(path):
        os.makedirs(path)
    return path


def _write_json(path, value):
    with open(path, "w", encoding="utf-8") as stream:
        stream.write(canonical_json(value) + "\n")
    return path


def _finish(manifest, paths, summary):
    for path in paths:
        manifest.add_output(path)
    manifest.summary = summary
    manifest.write()
    return summary


def cmd_ingest(config):
    """Parses the export, splits the labeled reports chronologically and
    caches the normalized corpus.
    """
    manifest = Manifest("ingest", config)
    manifest.write()

    parsed = parse_corpus(config.paths.require("corpus"), config.columns)
    examples = derive_examples(parsed.reports)
    labeled_ids = set(example.report_id for example in examples)
    split = chronological_split(
        [report for report in parsed.reports if report.id in labeled_ids],
        config.train_fraction)
    _, threshold = assign_time_classes(examples, config.short_fraction,
                                       config.quantile_basis, split.train_ids)
    split, _ = prune_unseen_labels(split.with_threshold(threshold), examples)

    cache_path = config.paths.cache_path
    save_corpus(cache_path, parsed.reports, split, parsed.summary)

    summary = dict(parsed.summary.to_json())
    summary.update({
        "labeled_examples": len(examples),
        "train": len(split.train_ids),
        "test": len(split.test_ids),
        "threshold_hours": threshold,
        "dropped_labels": sorted(label.value
                                 for label in split.dropped_labels),
    })
    summary_path = _write_json(
        os.path.join(config.paths.output_dir, "ingest_summary.json"), summary)
    LOGGER.info("Ingested %d reports: %d train, %d test.", len(parsed.reports),
                summary["train"], summary["test"])
    return _finish(manifest, [cache_path, summary_path], summary)


def _task_data(config, prepared):
    if config.task in CLASSIFICATION_TASKS:
        return classification_data(config.task, prepared)
    return regression_data(False, config.subset or Subset.FULL, prepared)


def cmd_featurize(config):
    """Exports the featurized train and test rows of the configured task."""
    manifest = Manifest("featurize", config)
    manifest.write()

    prepared = PreparedCorpus(config, load_cache(config))
    data = _task_data(config, prepared)
    use_topic = bool(config.features.get("use_topic", False))
    feature_config = FeatureConfig.from_json(
        config.features, use_topic, config.topics.k if use_topic else None)

    examples = data.train + data.test
    rows = prepared.features(examples, feature_config)
    if feature_config.standardize:
        standardizer = Standardizer().fit(rows[:len(data.train)])
        rows = standardizer.transform(rows)
    splits = ["train"] * len(data.train) + ["test"] * len(data.test)
    if data.classes is None:
        targets = [("duration_hours", [data.target(example)
                                       for example in examples])]
    else:
        targets = [("class", [data.target(example) for example in examples])]

    path = os.path.join(config.paths.output_dir,
                        "features_{}.csv".format(data.name))
    export_features(path, feature_config,
                    [example.report_id for example in examples], splits, rows,
                    targets)
    outputs = [path]
    if use_topic:
        outputs.append(config.paths.topic_model_path)
    return _finish(manifest, outputs, {"task": data.name,
                                       "rows": len(examples),
                                       "columns": feature_config.column_names})


def _classification_experiment(config, prepared):
    data = classification_data(config.task, prepared)
    rows, models = [], []
    for row in classification_grid(config.balancing):
        report, _, path = run_row(prepared, data, row)
        rows.append(ClassificationRow(row.label, report,
                                      reference(data.name, row.label)))
        models.append(path)
    extra = {
        "classes": list(data.classes),
        "balancing": config.balancing.value,
        "threshold_hours": data.threshold,
        "train": len(data.train),
        "test": len(data.test),
    }
    tables = write_table(_ensure_directory(config.paths.tables_dir),
                         data.name, TITLES[data.name], rows, extra)
    summary = {data.name: {row.label: row.report.to_json() for row in rows}}
    return list(tables) + models, summary


def _regression_experiment(config, prepared):
    outputs, summary = [], {}
    for fixed_only in (False, True):
        rows, name, extra = [], None, {}
        for row in regression_grid(config.subset):
            data = regression_data(fixed_only, row.subset, prepared)
            name = data.name
            report, _, path = run_row(prepared, data, row)
            rows.append(RegressionRow(row.label, report,
                                      reference(name, row.label)))
            extra[row.label] = {"train": len(data.train),
                                "test": len(data.test),
                                "threshold_hours": data.threshold}
            outputs.append(path)
        outputs.extend(write_table(_ensure_directory(config.paths.tables_dir),
                                   name, TITLES[name], rows, extra))
        summary[name] = {row.label: row.report.to_json() for row in rows}
    return outputs, summary


def _correlation_experiment(config, prepared):
    fit = fit_correlation(prepared, config.subset)
    report = regression_report(fit.scatter_y,
                               fit.slope * fit.scatter_x + fit.intercept)
    extra = {
        "slope": fit.slope,
        "intercept": fit.intercept,
        "train_r2": fit.train_r2,
        "published_r2": PUBLISHED_CORRELATION_R2,
    }
    tables = write_table(_ensure_directory(config.paths.tables_dir),
                         "correlation", TITLES["correlation"],
                         [RegressionRow(CORRELATION_LABEL, report, None)],
                         extra)
    summary = {"correlation": dict(report.to_json(), **extra)}
    return list(tables), summary


def cmd_experiment(config):
    """Trains and scores every model of the configured task's grid and writes
    its table.

    Raises:
        ConfigurationError: The subset does not apply to the task.
    """
    config.validate_task()
    manifest = Manifest("experiment", config)
    manifest.write()

    prepared = PreparedCorpus(config, load_cache(config))
    if config.task in CLASSIFICATION_TASKS:
        outputs, summary = _classification_experiment(config, prepared)
    elif config.task == Task.NUMERIC_TIME:
        outputs, summary = _regression_experiment(config, prepared)
    else:
        outputs, summary = _correlation_experiment(config, prepared)
    if os.path.exists(config.paths.topic_model_path):
        outputs.append(config.paths.topic_model_path)
    return _finish(manifest, outputs, summary)


def read_new_reports(path, columns):
    """Reports to score from a delimited file, in file order. Only the id and
    description columns are required; a missing priority becomes
    ``DEFAULT_PRIORITY``.
    """
    try:
        table = pd.read_csv(path, sep=columns.delimiter, dtype=str,
                            keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise DataError("Report file {} is empty.".format(path))
    except (IOError, OSError) as error:
        raise ConfigurationError("Cannot read report file {}: {}".format(
            path, error))
    missing = [column for column in (columns.id, columns.description)
               if column not in table.columns]
    if missing:
        raise ConfigurationError("Report file {} has no column(s) {}.".format(
            path, missing))
    priorities = (table[columns.priority] if columns.priority in table.columns
                  else [""] * len(table))
    return [NewReport(report_id.strip(), description,
                      parse_priority(priority) or DEFAULT_PRIORITY)
            for report_id, description, priority in zip(
                table[columns.id], table[columns.description], priorities)]


def _load_predict_models(config):
    models = {}
    for role in ("time_model", "destiny_model", "hours_model"):
        path = os.path.join(config.paths.models_dir,
                            getattr(config.predict, role))
        models[role] = load_model(path)
    return models


def _topic_model(config, models):
    needing = [model for model in models.values()
               if model.metadata["features"]["use_topic"]]
    if not needing:
        return None
    path = config.paths.topic_model_path
    if not os.path.exists(path):
        raise ConfigurationError("Topic features need {}; run the experiment "
                                 "command first.".format(path))
    topic_model = load_topic_model(path)
    for model in needing:
        if model.metadata["topic_fitted_on"] != topic_model.fitted_on:
            raise ConfigurationError(
                "Model {} was trained with a different topic model than "
                "{}.".format(model.metadata["row"], path))
    return topic_model


def _distribution(classes, probabilities):
    return {name: float(p) for name, p in zip(classes, probabilities)}


def cmd_predict(config, text=None, priority=None, reports_path=None):
    """Predicts the time class, destiny distribution and hours of new reports.

    Args:
        config: The RunConfig.
        text: Description of a single report to score inline.
        priority: Priority of the inline report; ``DEFAULT_PRIORITY`` if None.
        reports_path: File of reports to score; defaults to
            ``config.predict.reports``.

    Returns:
        One prediction record per report, in input order.
    """
    manifest = Manifest("predict", config)
    manifest.write()

    if text is not None:
        reports = [NewReport("inline", text, priority or DEFAULT_PRIORITY)]
    else:
        reports_path = reports_path or config.predict.reports
        if reports_path is None:
            raise ConfigurationError("Give report text or a report file.")
        reports = read_new_reports(reports_path, config.columns)
    if not reports:
        raise DataError("No reports to score.")

    models = _load_predict_models(config)
    topic_model = _topic_model(config, models)
    lexicon_path = config.paths.require("lexicon")

    prepared = {}
    rows = {}
    for role, model in sorted(models.items()):
        key = canonical_json(model.metadata["prep"])
        if key not in prepared:
            prep = PrepConfig.from_json(model.metadata["prep"])
            streams = preprocess_reports(reports, prep)
            scores = score_streams(streams,
                                   load_lexicon(lexicon_path, prep.normalize))
            topics = (assign_topics(streams, topic_model)
                      if topic_model is not None else None)
            prepared[key] = (scores, topics)
        scores, topics = prepared[key]
        rows[role] = features_for_model(model, reports, scores, topics)

    time_model = models["time_model"]
    destiny_model = models["destiny_model"]
    time_probabilities = predict(time_model, rows["time_model"])
    destiny_probabilities = predict(destiny_model, rows["destiny_model"])
    hours = predict(models["hours_model"], rows["hours_model"])
    time_classes = time_model.metadata["classes"]
    destiny_classes = destiny_model.metadata["classes"]

    records = [{
        "report_id": report.id,
        "time_class": time_classes[int(np.argmax(time_probabilities[i]))],
        "time_class_probabilities": _distribution(time_classes,
                                                  time_probabilities[i]),
        "destiny_label":
            destiny_classes[int(np.argmax(destiny_probabilities[i]))],
        "destiny_distribution": _distribution(destiny_classes,
                                              destiny_probabilities[i]),
        "estimated_hours": float(hours[i]),
    } for i, report in enumerate(reports)]

    path = os.path.join(config.paths.output_dir, "predictions.jsonl")
    with open(path, "w", encoding="utf-8") as stream:
        for record in records:
            stream.write(canonical_json(record) + "\n")
    LOGGER.info("Wrote %d predictions to %s.", len(records), path)
    _finish(manifest, [path], {"predictions": len(records)})
    return records


def cmd_plot_scatter(config):
    """Writes the test-split (emotionality, duration_hours) scatter and the
    fitted SVR line, rendering it when ``config.render`` is set.
    """
    manifest = Manifest("plot-scatter", config)
    manifest.write()

    prepared = PreparedCorpus(config, load_cache(config))
    fit = fit_correlation(prepared, config.subset)

    output_dir = config.paths.output_dir
    data_path = os.path.join(output_dir, "scatter.csv")
    pd.DataFrame({"emotionality": fit.scatter_x,
                  "duration_hours": fit.scatter_y}).to_csv(data_path,
                                                           index=False)
    metadata = {
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r2": fit.test_r2,
        "train_r2": fit.train_r2,
        "epsilon": config.train.svr_epsilon,
        "l2": config.train.svr_l2,
        "rows": len(fit.scatter_x),
        "published_r2": PUBLISHED_CORRELATION_R2,
    }
    outputs = [data_path,
               _write_json(os.path.join(output_dir, "scatter.json"), metadata)]
    if config.render:
        image = os.path.join(output_dir, "scatter." + config.render)
        plots.render_scatter(image, config.render, fit.scatter_x,
                             fit.scatter_y, fit.slope, fit.intercept)
        outputs.append(image)
    return _finish(manifest, outputs, metadata)


def cmd_plot_distribution(config):
    """Writes a log-binned histogram of the durations of every labeled
    report, with the short/long threshold, rendering it when
    ``config.render`` is set.
    """
    manifest = Manifest("plot-distribution", config)
    manifest.write()

    cache = load_cache(config)
    examples = derive_examples(cache.reports)
    if not examples:
        raise DataError("The cached corpus has no labeled reports.")
    _, threshold = assign_time_classes(examples, config.short_fraction,
                                       config.quantile_basis,
                                       cache.split.train_ids)
    edges, counts = plots.duration_histogram(
        [example.duration_hours for example in examples])

    output_dir = config.paths.output_dir
    data_path = os.path.join(output_dir, "distribution.csv")
    pd.DataFrame({"bin_start_hours": edges[:-1], "bin_end_hours": edges[1:],
                  "count": counts}).to_csv(data_path, index=False)
    metadata = {
        "bins": len(counts),
        "examples": len(examples),
        "threshold_hours": threshold,
        "short_fraction": config.short_fraction,
        "quantile_basis": config.quantile_basis.value,
    }
    outputs = [data_path, _write_json(
        os.path.join(output_dir, "distribution.json"), metadata)]
    if config.render:
        image = os.path.join(output_dir, "distribution." + config.render)
        plots.render_histogram(image, config.render, edges, counts, threshold)
        outputs.append(image)
    return _finish(manifest, outputs, metadata)


COMMANDS = {
    "ingest": cmd_ingest,
    "featurize": cmd_featurize,
    "experiment": cmd_experiment,
    "predict": cmd_predict,
    "plot-scatter": cmd_plot_scatter,
    "plot-distribution": cmd_plot_distribution,
}
