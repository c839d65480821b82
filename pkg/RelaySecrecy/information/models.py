"""
Value types for information measures.

JointPmf and GaussianCov hold the joint law of the six channel variables
(X1, X2, Yr, Yhat, Y1, Y2), or any labelled subset of them. Both are
immutable once constructed.
"""

from dataclasses import dataclass, field

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError
from scipy.special import entr

from RelaySecrecy.validators import DistributionValidator

X1 = 'X1'
X2 = 'X2'
YR = 'Yr'
YHAT = 'Yhat'
Y1 = 'Y1'
Y2 = 'Y2'

LN2 = np.log(2.0)


def label_set(labels):
    """Normalise a label or an iterable of labels to a frozenset."""
    if labels is None:
        return frozenset()
    if isinstance(labels, str):
        return frozenset([labels])
    return frozenset(labels)


def _check_labels(variables, labels):
    unknown = labels.difference(variables)
    if unknown:
        raise ValidationError(
            f'Unknown variable label(s): {", ".join(sorted(unknown))}. '
            f'Known: {", ".join(variables)}'
        )


def frozen_array(value):
    """Read-only float copy of `value`."""
    array = np.array(value, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class JointPmf:
    """Dense joint probability table, one axis per labelled variable."""

    variables: tuple
    probs: np.ndarray
    _entropies: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'variables', tuple(self.variables))
        object.__setattr__(self, 'probs', frozen_array(self.probs))
        self.clean()

    def clean(self):
        """Custom validation for JointPmf"""
        if len(set(self.variables)) != len(self.variables):
            raise ValidationError(f'Duplicate variable labels: {self.variables}')
        if self.probs.ndim != len(self.variables):
            raise ValidationError(
                f'Table has {self.probs.ndim} axes for {len(self.variables)} variables.'
            )
        DistributionValidator(axes=self.probs.ndim, name='joint pmf')(self.probs)

    @property
    def sizes(self):
        return dict(zip(self.variables, self.probs.shape))

    def _table(self, labels):
        drop = tuple(axis for axis, name in enumerate(self.variables) if name not in labels)
        return self.probs.sum(axis=drop) if drop else self.probs

    def marginal(self, labels):
        """Return the marginal over `labels`, keeping this table's variable order."""
        labels = label_set(labels)
        _check_labels(self.variables, labels)
        kept = tuple(name for name in self.variables if name in labels)
        return JointPmf(kept, self._table(labels))

    def entropy(self, labels):
        """Joint entropy H(labels) in bits; the empty set has entropy 0."""
        labels = label_set(labels)
        _check_labels(self.variables, labels)
        if not labels:
            return 0.0
        if labels not in self._entropies:
            self._entropies[labels] = float(entr(self._table(labels)).sum() / LN2)
        return self._entropies[labels]


@dataclass(frozen=True, eq=False)
class GaussianCov:
    """Covariance matrix of jointly Gaussian, zero-mean, labelled variables."""

    variables: tuple
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'variables', tuple(self.variables))
        object.__setattr__(self, 'matrix', frozen_array(self.matrix))
        self.clean()

    def clean(self):
        """Custom validation for GaussianCov"""
        if len(set(self.variables)) != len(self.variables):
            raise ValidationError(f'Duplicate variable labels: {self.variables}')
        n = len(self.variables)
        if self.matrix.shape != (n, n):
            raise ValidationError(
                f'Covariance must be {n}x{n} for {n} variables, got {self.matrix.shape}.'
            )
        if not np.all(np.isfinite(self.matrix)):
            raise ValidationError('Covariance contains non-finite entries.')
        if np.max(np.abs(self.matrix - self.matrix.T), initial=0.0) > 1e-12:
            raise ValidationError('Covariance is not symmetric.')
        if n and np.linalg.eigvalsh(self.matrix).min() < -settings.COVARIANCE_EIGEN_TOLERANCE:
            raise ValidationError('Covariance is not positive semidefinite.')

    def indices(self, labels):
        labels = label_set(labels)
        _check_labels(self.variables, labels)
        return [axis for axis, name in enumerate(self.variables) if name in labels]

    def block(self, labels):
        """Sub-covariance of `labels`, in this matrix's variable order."""
        idx = self.indices(labels)
        return self.matrix[np.ix_(idx, idx)]

    def __getitem__(self, pair):
        first, second = pair
        return float(self.matrix[self.variables.index(first), self.variables.index(second)])
