"""
Value types for the discrete memoryless relay-eavesdropper channel.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from RelaySecrecy.information.models import frozen_array
from RelaySecrecy.validators import (
    distribution_validator,
    test_channel_validator,
    transition_validator,
    validate_open_unit_interval,
    validate_rate,
)

JOINT = 'joint'
SEPARATE = 'separate'

NORMAL = 'normal'
VERY_STRONG = 'very_strong'
EXTREMELY_STRONG = 'extremely_strong'

SIZE_FIELDS = ('x1', 'x2', 'yr', 'y1', 'y2')


@dataclass(frozen=True, eq=False)
class DmChannel:
    """Transition law p(yr, y1, y2 | x1, x2), indexed [x1][x2][yr][y1][y2]."""

    transition: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'transition', frozen_array(self.transition))
        self.clean()

    def clean(self):
        """Custom validation for DmChannel"""
        if self.transition.ndim != 5:
            raise ValidationError(
                f'transition must have 5 axes [x1][x2][yr][y1][y2], got {self.transition.ndim}.'
            )
        transition_validator(self.transition)

    @property
    def sizes(self):
        return dict(zip(SIZE_FIELDS, self.transition.shape))


@dataclass(frozen=True, eq=False)
class InputPolicy:
    """One member of the class of input distributions.

    `test_channel` is p(yhat | yr, x2) indexed [yr][x2][yhat]; None disables
    the relay's compressed observation (Yhat is empty).
    """

    px1: np.ndarray
    px2: np.ndarray
    test_channel: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, 'px1', frozen_array(self.px1))
        object.__setattr__(self, 'px2', frozen_array(self.px2))
        if self.test_channel is not None:
            object.__setattr__(self, 'test_channel', frozen_array(self.test_channel))
        self.clean()

    def clean(self):
        """Custom validation for InputPolicy"""
        for name, dist in (('px1', self.px1), ('px2', self.px2)):
            if dist.ndim != 1:
                raise ValidationError(f'{name} must be a vector.')
            distribution_validator(dist)
        if self.test_channel is not None:
            if self.test_channel.ndim != 3:
                raise ValidationError('test_channel must be indexed [yr][x2][yhat].')
            test_channel_validator(self.test_channel)

    @property
    def compressed(self):
        return self.test_channel is not None

    @property
    def yhat_size(self):
        return 0 if self.test_channel is None else self.test_channel.shape[2]

    def check_against(self, channel):
        """Raise ValidationError unless the alphabet sizes match `channel`."""
        sizes = channel.sizes
        if self.px1.shape[0] != sizes['x1'] or self.px2.shape[0] != sizes['x2']:
            raise ValidationError(
                f'Input distributions have sizes ({self.px1.shape[0]}, {self.px2.shape[0]}), '
                f'channel expects ({sizes["x1"]}, {sizes["x2"]}).'
            )
        if self.test_channel is not None and self.test_channel.shape[:2] != (sizes['yr'], sizes['x2']):
            raise ValidationError(
                f'test_channel is indexed over {self.test_channel.shape[:2]}, '
                f'channel expects ({sizes["yr"]}, {sizes["x2"]}).'
            )

    def as_dict(self):
        return {
            'px1': self.px1.tolist(),
            'px2': self.px2.tolist(),
            'test_channel': None if self.test_channel is None else self.test_channel.tolist(),
        }


@dataclass(frozen=True)
class RateTerms:
    """The mutual-information terms of the secrecy rate for one policy.

    Pairs are indexed by receiver: position 0 is the destination (Y1),
    position 1 the eavesdropper (Y2).

    i1       I(Yhat; Yr | X2)
    i2       I(X1,X2; Yt) + I(Yhat; X1,Yt | X2)
    i_joint  I(X1; Yhat,Yt | X2)
    i_direct I(X1; Yt)
    i3       I(X2; Y2 | X1) + I(Yhat; X1,Y2 | X2)
    """

    i1: float
    i2: tuple
    i_joint: tuple
    i_direct: tuple
    i3: float

    def __post_init__(self):
        object.__setattr__(self, 'i1', float(self.i1))
        object.__setattr__(self, 'i3', float(self.i3))
        for name in ('i2', 'i_joint', 'i_direct'):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        self.clean()

    def clean(self):
        """Custom validation for RateTerms"""
        for name in ('i2', 'i_joint', 'i_direct'):
            if len(getattr(self, name)) != 2:
                raise ValidationError(f'{name} must hold one value per receiver.')
        values = (self.i1, self.i3) + self.i2 + self.i_joint + self.i_direct
        if any(not np.isfinite(v) or v < 0 for v in values):
            raise ValidationError(f'Rate terms must be finite and nonnegative: {values}')
        for k in range(2):
            if self.i2[k] < self.i_direct[k] - 1e-9:
                raise ValidationError(
                    f'i2[{k + 1}]={self.i2[k]} is below i_direct[{k + 1}]={self.i_direct[k]}.'
                )


@dataclass(frozen=True)
class RateBreakdown:
    r1_dest: float
    r1_eve: float
    r2: float
    decoding_mode: tuple
    rs: float

    def as_dict(self):
        return {
            'r1_dest': self.r1_dest,
            'r1_eve': self.r1_eve,
            'r2': self.r2,
            'decoding_mode': {'destination': self.decoding_mode[0], 'eavesdropper': self.decoding_mode[1]},
            'rs': self.rs,
        }


@dataclass(frozen=True)
class Lemma1Input:
    """Inputs of the bound on p(l_j | l_{j-1}) for the relay's compression index."""

    n: int
    r2: float
    i1: float
    eps_prime: float
    delta_eps: float = 0.0

    def __post_init__(self):
        self.clean()

    def clean(self):
        """Custom validation for Lemma1Input"""
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ValidationError(f'n must be a positive integer, got {self.n!r}.')
        validate_rate(self.r2, 'r2')
        validate_rate(self.i1, 'i1')
        validate_rate(self.delta_eps, 'delta_eps')
        validate_open_unit_interval(self.eps_prime, 'eps_prime')


@dataclass(frozen=True)
class SearchConfig:
    """How the class of input distributions is searched.

    yhat_size  cardinality of Yhat; None means |Yr| + 1, 0 disables Yhat
               (the search then covers the helping-interferer class only)
    resolution divisions of each probability simplex on the coarse grid
    """

    yhat_size: Optional[int] = None
    resolution: int = field(default_factory=lambda: settings.POLICY_GRID_RESOLUTION)
    refinements: int = field(default_factory=lambda: settings.POLICY_REFINEMENTS)
    restarts: int = 0
    seed: int = 0
    cell_budget: int = field(default_factory=lambda: settings.POLICY_CELL_BUDGET)

    def __post_init__(self):
        self.clean()

    def clean(self):
        """Custom validation for SearchConfig"""
        if self.yhat_size is not None and self.yhat_size < 0:
            raise ValidationError('yhat_size must be nonnegative.')
        if self.resolution < 1:
            raise ValidationError('resolution must be at least 1.')
        if self.refinements < 0 or self.restarts < 0:
            raise ValidationError('refinements and restarts must be nonnegative.')
        if self.cell_budget < 1:
            raise ValidationError('cell_budget must be positive.')

    def resolve_yhat_size(self, channel):
        return channel.sizes['yr'] + 1 if self.yhat_size is None else self.yhat_size


@dataclass(frozen=True)
class EavesdroppingReport:
    """Grid certificate for the eavesdropping-strength inequalities.

    The verdicts cover the searched grid only, never the whole class.
    A margin is the smallest (left side - right side) seen on the grid;
    the matching violation is the policy at which an inequality failed.
    """

    kind: str
    very_strong: bool
    extremely_strong: bool
    very_strong_margin: float
    extremely_strong_margin: float
    points_checked: int
    very_strong_violation: Optional[InputPolicy] = None
    extremely_strong_violation: Optional[InputPolicy] = None
    approximate: bool = True

    def as_dict(self):
        return {
            'kind': self.kind,
            'very_strong': self.very_strong,
            'extremely_strong': self.extremely_strong,
            'very_strong_margin': self.very_strong_margin,
            'extremely_strong_margin': self.extremely_strong_margin,
            'points_checked': self.points_checked,
            'very_strong_violation': (
                None if self.very_strong_violation is None else self.very_strong_violation.as_dict()
            ),
            'extremely_strong_violation': (
                None if self.extremely_strong_violation is None
                else self.extremely_strong_violation.as_dict()
            ),
            'approximate': self.approximate,
        }
