"""
JSON channel files.

    {"sizes": {"x1": 2, "x2": 2, "yr": 2, "y1": 2, "y2": 2},
     "transition": [[[[[...]]]]]}        # indexed [x1][x2][yr][y1][y2]
"""

import json
import logging
import numbers

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from .models import SIZE_FIELDS, DmChannel

logger = logging.getLogger(__name__)


def _fail(message):
    logger.warning(f'Malformed channel fixture: {message}')
    raise ValidationError(message)


def _read_sizes(data):
    sizes = data.get('sizes')
    if not isinstance(sizes, dict):
        _fail('sizes: expected an object with keys x1, x2, yr, y1, y2')
    result = []
    for key in SIZE_FIELDS:
        value = sizes.get(key)
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            _fail(f'sizes.{key}: expected a positive integer, got {value!r}')
        result.append(value)
    return tuple(result)


def _read_table(node, shape, path):
    if not shape:
        if isinstance(node, bool) or not isinstance(node, numbers.Real):
            _fail(f'{path}: expected a number, got {node!r}')
        if not np.isfinite(node) or node < 0:
            _fail(f'{path}: expected a nonnegative probability, got {node!r}')
        return float(node)
    if not isinstance(node, list) or len(node) != shape[0]:
        _fail(f'{path}: expected a list of length {shape[0]}')
    return [_read_table(child, shape[1:], f'{path}[{i}]') for i, child in enumerate(node)]


def channel_from_dict(data):
    """Parse and validate a channel document; errors name the offending field."""
    if not isinstance(data, dict):
        _fail('document: expected a JSON object')
    shape = _read_sizes(data)
    if 'transition' not in data:
        _fail('transition: missing')
    table = np.array(_read_table(data['transition'], shape, 'transition'))
    totals = table.sum(axis=(2, 3, 4))
    for x1, x2 in np.ndindex(*totals.shape):
        if abs(totals[x1, x2] - 1.0) > settings.PROBABILITY_TOLERANCE:
            _fail(f'transition[{x1}][{x2}]: slice sums to {totals[x1, x2]!r}, expected 1')
    return DmChannel(table)


def channel_to_dict(channel):
    return {'sizes': channel.sizes, 'transition': channel.transition.tolist()}


def load_channel(path):
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except OSError as exc:
        _fail(f'fixture: cannot read {path}: {exc.strerror}')
    except json.JSONDecodeError as exc:
        _fail(f'fixture: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}')
    return channel_from_dict(data)
