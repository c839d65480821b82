"""
Custom validators for the RelaySecrecy project.

Every validator raises django.core.exceptions.ValidationError, which the
management commands turn into a CommandError.
"""

import math

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.deconstruct import deconstructible


def _finite(value, name):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f'{name} must be a real number, got {value!r}.')
    if not math.isfinite(value):
        raise ValidationError(f'{name} must be finite, got {value!r}.')
    return value


def validate_gain(value, name='gain'):
    """Validate a linear-scale channel gain"""
    if _finite(value, name) < 0:
        raise ValidationError(f'{name} must be nonnegative, got {value!r}.')


def validate_power(value, name='power'):
    """Validate a transmit power or power budget"""
    if _finite(value, name) < 0:
        raise ValidationError(f'{name} must be nonnegative, got {value!r}.')


def validate_rate(value, name='rate'):
    """Validate a rate in bits"""
    if _finite(value, name) < 0:
        raise ValidationError(f'{name} must be nonnegative bits, got {value!r}.')


def validate_variance(value, name='delta_c'):
    """Validate a compression-noise variance; None means compression is disabled"""
    if value is None:
        return
    if _finite(value, name) < 0:
        raise ValidationError(f'{name} must be nonnegative or disabled, got {value!r}.')


def validate_open_unit_interval(value, name='value'):
    value = _finite(value, name)
    if not 0.0 < value < 1.0:
        raise ValidationError(f'{name} must lie strictly between 0 and 1, got {value!r}.')


@deconstructible
class DistributionValidator:
    """Validate a probability table along its last `axes` axes.

    Entries must be nonnegative and every slice over the trailing axes must
    sum to one within the configured tolerance.
    """

    def __init__(self, axes=1, name='distribution'):
        self.axes = axes
        self.name = name

    def __call__(self, value):
        table = np.asarray(value, dtype=float)
        if table.ndim < self.axes or table.size == 0:
            raise ValidationError(f'{self.name} must have at least {self.axes} nonempty axes.')
        if not np.all(np.isfinite(table)):
            raise ValidationError(f'{self.name} contains non-finite entries.')
        if np.any(table < 0):
            raise ValidationError(f'{self.name} has negative entries.')
        trailing = tuple(range(table.ndim - self.axes, table.ndim))
        totals = table.sum(axis=trailing)
        worst = np.max(np.abs(totals - 1.0))
        if worst > settings.PROBABILITY_TOLERANCE:
            raise ValidationError(
                f'{self.name} does not sum to one (largest deviation {worst:.3e}).'
            )


def validate_scheme_list(value):
    """Validate a list of sweep scheme names"""
    if not value:
        raise ValidationError('At least one scheme is required.')
    unknown = [scheme for scheme in value if scheme not in settings.SWEEP_SCHEMES]
    if unknown:
        raise ValidationError(
            f'Unknown scheme(s): {", ".join(unknown)}. Allowed: {", ".join(settings.SWEEP_SCHEMES)}'
        )
    if len(set(value)) != len(value):
        raise ValidationError('Schemes must not repeat.')


# Predefined validators for common use cases
distribution_validator = DistributionValidator(axes=1)
transition_validator = DistributionValidator(axes=3, name='transition')
test_channel_validator = DistributionValidator(axes=1, name='test_channel')
