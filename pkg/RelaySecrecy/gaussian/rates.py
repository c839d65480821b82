"""
Closed-form secrecy rates of the Gaussian relay-eavesdropper channel.

The relay compresses Yr as Yhat = Yr + Zc with Var(Zc) = delta_c and the
destination decodes jointly. With

    delta_c* = (1 + (1 + c) P1) / (b P2)
    R2*      = max{ C((1 + c P1) / delta_c*), C(P2) + C(c P1 / (1 + delta_c*)) }

the destination rate minus the eavesdropper's separate-decoding rate
collapses to one of three expressions depending on b (`rs_I`). The `_grid`
variants accept numpy arrays of powers and are what the power search uses.
"""

import logging
from functools import partial

import numpy as np
from django.core.exceptions import ValidationError

from RelaySecrecy.channels.models import RateTerms
from RelaySecrecy.channels.rates import assemble_terms, optimize_r2, r1_of_r2
from RelaySecrecy.information.gaussian import build_gaussian_cov, gaussian_conditional_mi

from .models import CompressionChoice

logger = logging.getLogger(__name__)


def _cap(x):
    return 0.5 * np.log2(1.0 + x)


def cap(x):
    """C(x) = 1/2 log2(1 + x)."""
    x = float(x)
    if x < 0:
        raise ValidationError(f'C(x) needs x >= 0, got {x!r}.')
    return float(_cap(x))


def _compressed_arms(s, delta_c):
    """i2, i_joint and i3 with Yhat = Yr + Zc; finite for every delta_c >= 0."""
    a, b, c, p1, p2 = s.a, s.b, s.c, s.p1, s.p2
    gain = c * p1 / (1.0 + delta_c)
    return (
        (cap(p1 + b * p2) + cap(gain), cap(a * p1 + p2) + cap(gain)),
        (cap(p1 + gain), cap(a * p1 + gain)),
        cap(p2) + cap(gain),
    )


def _direct_arms(s):
    return cap(s.p1 / (1.0 + s.b * s.p2)), cap(s.a * s.p1 / (1.0 + s.p2))


def closed_form_terms(s, delta_c=None):
    """RateTerms of the Gaussian channel from closed forms; `delta_c=None` drops Yhat."""
    a, b, p1, p2 = s.a, s.b, s.p1, s.p2
    if delta_c is None:
        return RateTerms(
            i1=0.0,
            i2=(cap(p1 + b * p2), cap(a * p1 + p2)),
            i_joint=(cap(p1), cap(a * p1)),
            i_direct=_direct_arms(s),
            i3=cap(p2),
        )
    if delta_c <= 0:
        raise ValidationError('delta_c must be positive; Yhat = Yr carries infinite information.')
    i2, i_joint, i3 = _compressed_arms(s, delta_c)
    return RateTerms(
        i1=cap((1.0 + s.c * p1) / delta_c),
        i2=i2,
        i_joint=i_joint,
        i_direct=_direct_arms(s),
        i3=i3,
    )


def covariance_terms(s, delta_c=None):
    """The same RateTerms read off covariance log-determinants."""
    cov = build_gaussian_cov(s.a, s.b, s.c, s.p1, s.p2, delta_c)
    return assemble_terms(partial(gaussian_conditional_mi, cov), delta_c is not None)


def r1_gaussian(s, cfg, t):
    """Source rate decodable at receiver t with compression variance cfg.delta_c and relay rate cfg.r2.

    I1 never enters, so delta_c = 0 (the relay forwards Yr itself) is allowed.
    """
    if cfg.disabled:
        raise ValidationError('r1_gaussian needs a compression variance; use r1_uncompressed instead.')
    if t not in (1, 2):
        raise ValidationError(f'Receiver index must be 1 or 2, got {t!r}.')
    i2, i_joint, _ = _compressed_arms(s, cfg.delta_c)
    k = t - 1
    return max(min(i_joint[k], i2[k] - cfg.r2), _direct_arms(s)[k])


def r1_uncompressed(s, t, r2):
    """Source rate at receiver t when the relay only sends dummy codewords at rate r2."""
    return r1_of_r2(closed_form_terms(s, None), t, r2)


def delta_star(s):
    if s.b <= 0 or s.p2 <= 0:
        return None
    return (1.0 + (1.0 + s.c) * s.p1) / (s.b * s.p2)


def r2_star(s):
    delta = delta_star(s)
    if delta is None:
        return 0.0
    return max(cap((1.0 + s.c * s.p1) / delta), cap(s.p2) + cap(s.c * s.p1 / (1.0 + delta)))


def compression_choice(s):
    delta = delta_star(s)
    if delta is None:
        logger.debug(f'No compression for {s}: the relay cannot reach the destination')
        return CompressionChoice(delta_c=None, r2=0.0, degenerate=True)
    return CompressionChoice(delta_c=delta, r2=r2_star(s))


def _regime_index(b, c, p1):
    return np.select([b >= 1.0 + (1.0 + c) * p1, b >= 1.0], [1, 2], default=3)


def regime(s):
    """1: b >= 1 + (1 + c) P1, 2: 1 <= b < 1 + (1 + c) P1, 3: b < 1."""
    return int(_regime_index(s.b, s.c, s.p1))


def rs_I_grid(a, b, c, p1, p2):
    p1, p2 = np.asarray(p1, dtype=float), np.asarray(p2, dtype=float)
    eve = _cap(a * p1 / (1.0 + p2))
    relayed = _cap(p1 + b * c * p1 * p2 / (1.0 + (1.0 + c) * p1 + b * p2)) - eve
    jammed = _cap(p1 + b * p2) - _cap(a * p1 + p2)
    interfered = _cap(p1 / (1.0 + b * p2)) - eve
    index = _regime_index(b, c, p1)
    return np.select([index == 1, index == 2], [relayed, jammed], default=interfered)


def rs_II_grid(a, p1):
    p1 = np.asarray(p1, dtype=float)
    return np.maximum(_cap(p1) - _cap(a * p1), 0.0)


def wt_hi_grid(a, b, p1, p2):
    """Helping-interferer rate on arrays of powers, maximised over the relay rate."""
    p1, p2 = np.asarray(p1, dtype=float), np.asarray(p2, dtype=float)
    i2 = (_cap(p1 + b * p2), _cap(a * p1 + p2))
    i_joint = (_cap(p1), _cap(a * p1))
    i_direct = (_cap(p1 / (1.0 + b * p2)), _cap(a * p1 / (1.0 + p2)))

    def objective(r2):
        dest = np.maximum(np.minimum(i_joint[0], i2[0] - r2), i_direct[0])
        eve = np.maximum(np.minimum(i_joint[1], i2[1] - r2), i_direct[1])
        return dest - eve

    # every candidate is >= 0 = I1 since the relay sends no compression index
    candidates = [np.zeros_like(p1 + p2), _cap(p2)]
    for k in range(2):
        candidates.append(i2[k] - i_joint[k])
        candidates.append(i2[k] - i_direct[k])
    best = np.max([objective(r2) for r2 in candidates], axis=0)
    return np.maximum(best, 0.0)


def rs_I(s):
    """Unclamped; negative values keep the regime diagnostics."""
    return float(rs_I_grid(s.a, s.b, s.c, s.p1, s.p2))


def rs_II(s):
    return float(rs_II_grid(s.a, s.p1))


def rs_fixed(s):
    return max(rs_I(s), rs_II(s))


def wt_hi_terms(s):
    return closed_form_terms(s, None)


def gaussian_wt_hi(s):
    return optimize_r2(wt_hi_terms(s)).rs