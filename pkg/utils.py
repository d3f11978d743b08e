"""Utility functions for ``bug-destiny``: nested attribute access used for
command-line overrides of run configuration, canonical JSON, digests and the
rounding rule shared by splits and quantiles.
"""
import functools
import hashlib
import json
import math
import logging

LOGGER = logging.getLogger(__name__)


def rsetattr(obj, attr, val):
    """Sets nested attribute of child elements separating attribute path
    using a double underscore.

    Example: `attr` "train__seed" sets the value at `obj.train.seed`

    Args:
        obj: The object to set the value on.
        attr: The attribute path with dunderscores separating attribute paths
        val: value to set
    """
    pre, _, post = attr.rpartition('__')

    leaf_obj = rgetattr(obj, pre) if pre else obj

    if not hasattr(leaf_obj, post):
        raise AttributeError(
            "{}.{} has no attribute {} on it, and rsetattr does not initialize "
            "values.".format(obj, pre, post))

    return setattr(leaf_obj, post, val)


def rgetattr(obj, attr):
    """Gets nested attribute of child elements separating attribute path
    using a double underscore.

    Example: `attr` "train__seed" gets the value at `obj.train.seed`

    Args:
        obj: The object to get the value from.
        attr: The attribute path with dunderscores separating attribute paths

    Returns: value at the attribute
    """
    return functools.reduce(getattr, [obj] + attr.split('__'))


def canonical_json(value):
    """Serializes ``value`` to JSON with sorted keys and no insignificant
    whitespace, so equal values always produce equal bytes.
    """
    return json.dumps(value, sort_keys=True, separators=(',', ':'))


def digest(*parts):
    """SHA-256 hex digest over the string forms of ``parts``, separated by
    NUL bytes.
    """
    hasher = hashlib.sha256()
    for part in parts:
        if not isinstance(part, bytes):
            part = str(part).encode('utf-8')
        hasher.update(part)
        hasher.update(b'\x00')
    return hasher.hexdigest()


def ceil_fraction(fraction, count):
    """ceil(fraction * count), ignoring floating point noise such as
    0.7 * 10 = 7.000000000000001.
    """
    return int(math.ceil(round(fraction * count, 9)))
