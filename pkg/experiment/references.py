"""Published results for the experiment tables, keyed by table name and row
label. Rows without a published counterpart have no entry.
"""


def _classification(precision, recall, f1, accuracy):
    return {"precision": precision, "recall": recall, "f1": f1,
            "accuracy": accuracy}


def _regression(mae, mse):
    return {"mae": mae, "mse": mse}


_BASE = "(Emotion, Emotionality, Priority)"
_TOPIC = "(Emotion, Emotionality, Priority, Predicted Topic)"


def _grid(values):
    labels = ["MLP " + _BASE, "CNN " + _BASE, "MLP " + _TOPIC,
              "CNN " + _TOPIC]
    labels += [label + " Weighted" for label in labels]
    return {label: _classification(*row) for label, row in zip(labels,
                                                               values)}


PUBLISHED = {
    "time_to_resolution": _grid([
        (0.75, 0.79, 0.70, 0.79), (0.75, 0.79, 0.70, 0.79),
        (0.75, 0.79, 0.70, 0.79), (0.75, 0.79, 0.70, 0.79),
        (0.67, 0.59, 0.62, 0.59), (0.67, 0.58, 0.61, 0.58),
        (0.67, 0.60, 0.63, 0.60), (0.67, 0.68, 0.67, 0.68),
    ]),
    "time_to_fix": _grid([
        (0.78, 0.79, 0.71, 0.79), (0.78, 0.79, 0.71, 0.79),
        (0.78, 0.79, 0.71, 0.79), (0.78, 0.79, 0.71, 0.79),
        (0.68, 0.64, 0.66, 0.64), (0.68, 0.58, 0.62, 0.58),
        (0.69, 0.58, 0.62, 0.58), (0.68, 0.53, 0.58, 0.53),
    ]),
    "destiny": _grid([
        (0.34, 0.57, 0.42, 0.57), (0.33, 0.57, 0.42, 0.57),
        (0.34, 0.57, 0.42, 0.57), (0.33, 0.57, 0.42, 0.57),
        (0.46, 0.15, 0.18, 0.15), (0.33, 0.57, 0.42, 0.57),
        (0.48, 0.13, 0.15, 0.13), (0.33, 0.57, 0.42, 0.57),
    ]),
    "numeric_time_to_resolution": {
        "CNN (Full Dataset)": _regression(2890, 42422784),
        "CNN (Short)": _regression(575, 983709),
        "CNN (Long)": _regression(7769, 116059196),
        "Linear Regression (Full Dataset)": _regression(2893, 42445410),
        "Linear Regression (Short)": _regression(578, 1029487),
        "Linear Regression (Long)": _regression(8835, 115698132),
    },
    "numeric_time_to_fix": {
        "CNN (Full Dataset)": _regression(2422, 28267867),
        "CNN (Short)": _regression(662, 1044963),
        "CNN (Long)": _regression(5170, 63181711),
        "Linear Regression (Full Dataset)": _regression(2427, 28541468),
        "Linear Regression (Short)": _regression(671, 1144002),
        "Linear Regression (Long)": _regression(6125, 60252990),
    },
}

PUBLISHED_CORRELATION_R2 = -0.23


def reference(table, label):
    return PUBLISHED.get(table, {}).get(label)
