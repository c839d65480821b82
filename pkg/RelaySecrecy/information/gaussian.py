"""
Gaussian mutual-information oracle.

The channel of the Gaussian relay-eavesdropper model is written as a linear
map of independent sources, and mutual informations are read off covariance
log-determinants. Nothing here knows the closed-form rate expressions, which
is what makes it usable as an independent check on them.
"""

import logging

import numpy as np
from django.conf import settings

from RelaySecrecy.validators import validate_gain, validate_power, validate_variance

from .measures import disjoint_label_sets
from .models import LN2, X1, X2, Y1, Y2, YHAT, YR, GaussianCov

logger = logging.getLogger(__name__)


class SingularCovarianceError(ArithmeticError):
    """A covariance block stayed singular after diagonal loading."""

    def __init__(self, labels):
        self.labels = frozenset(labels)
        super().__init__(
            f'Covariance block of {{{", ".join(sorted(self.labels))}}} is not positive definite.'
        )


def build_gaussian_cov(a, b, c, p1, p2, delta_c=None):
    """Covariance of (X1, X2, Yr, Yhat, Y1, Y2) for the Gaussian channel.

        Y1   = X1 + sqrt(b) X2 + Z1
        Y2   = sqrt(a) X1 + X2 + Z2
        Yr   = sqrt(c) X1 + Zr
        Yhat = Yr + Zc,   Var(Zc) = delta_c

    Z1, Z2, Zr have unit variance; every source is independent. With
    `delta_c=None` the relay's compressed output is disabled and the Yhat
    row/column is left out.
    """
    for name, gain in (('a', a), ('b', b), ('c', c)):
        validate_gain(gain, name)
    validate_power(p1, 'P1')
    validate_power(p2, 'P2')
    validate_variance(delta_c)

    sa, sb, sc = np.sqrt(a), np.sqrt(b), np.sqrt(c)
    # sources: X1, X2, Zr, Zc, Z1, Z2
    variances = np.array([p1, p2, 1.0, 0.0 if delta_c is None else delta_c, 1.0, 1.0])
    mixing = {
        X1: [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        X2: [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        YR: [sc, 0.0, 1.0, 0.0, 0.0, 0.0],
        YHAT: [sc, 0.0, 1.0, 1.0, 0.0, 0.0],
        Y1: [1.0, sb, 0.0, 0.0, 1.0, 0.0],
        Y2: [sa, 1.0, 0.0, 0.0, 0.0, 1.0],
    }
    variables = tuple(name for name in mixing if not (name == YHAT and delta_c is None))
    m = np.array([mixing[name] for name in variables])
    cov = (m * variances) @ m.T
    return GaussianCov(variables, (cov + cov.T) / 2.0)


def _logdet(cov, labels):
    if not labels:
        return 0.0
    block = cov.block(labels)
    block = block + settings.COVARIANCE_JITTER * np.eye(block.shape[0])
    try:
        factor = np.linalg.cholesky(block)
    except np.linalg.LinAlgError:
        logger.warning(f'Singular covariance block for {sorted(labels)}')
        raise SingularCovarianceError(labels)
    return 2.0 * float(np.sum(np.log(np.diag(factor))))


def gaussian_conditional_mi(cov, a, b, c=()):
    """I(A; B | C) in bits for jointly Gaussian variables.

    Equals 1/2 log2( det S_AC det S_BC / (det S_C det S_ABC) ) with
    det S_{} = 1. Clipped at zero against rounding.
    """
    a, b, c = disjoint_label_sets(a, b, c)
    if not a or not b:
        return 0.0
    nats = _logdet(cov, a | c) + _logdet(cov, b | c) - _logdet(cov, c) - _logdet(cov, a | b | c)
    return max(0.5 * nats / LN2, 0.0)
