"""
Secrecy rate of the relay-eavesdropper channel for a fixed input policy.

For receiver t (1 = destination, 2 = eavesdropper) the decodable source rate
as a function of the relay code rate R2 is

    R1(t)(R2) = max{ min[ I(X1; Yhat,Yt | X2), I2(t) - R2 ], I(X1; Yt) }

and the secrecy rate is max over R2 >= I1 of [R1(1)(R2) - R1(2)(R2)]^+.
The objective is piecewise linear in R2 with slopes in {-1, 0, 1}, so it is
maximised exactly on a finite set of breakpoints.
"""

import logging
from functools import partial

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from RelaySecrecy.information.measures import conditional_mi
from RelaySecrecy.information.models import X1, X2, Y1, Y2, YHAT, YR, JointPmf
from RelaySecrecy.validators import validate_rate

from .models import JOINT, SEPARATE, InputPolicy, RateBreakdown, RateTerms

logger = logging.getLogger(__name__)

RECEIVERS = (Y1, Y2)


def joint_pmf(channel, policy):
    """p(x1) p(x2) p(yr,y1,y2|x1,x2) p(yhat|yr,x2) as a labelled table."""
    policy.check_against(channel)
    if policy.test_channel is None:
        probs = np.einsum('i,j,ijkmn->ijkmn', policy.px1, policy.px2, channel.transition)
        return JointPmf((X1, X2, YR, Y1, Y2), probs)
    probs = np.einsum(
        'i,j,ijkmn,kjl->ijklmn', policy.px1, policy.px2, channel.transition, policy.test_channel
    )
    return JointPmf((X1, X2, YR, YHAT, Y1, Y2), probs)


def assemble_terms(mi, compressed):
    """Build RateTerms from any conditional mutual information `mi(A, B, C)`.

    `mi` may be backed by a finite joint pmf or by a Gaussian covariance.
    Without compression Yhat is empty: I1 = 0 and every Yhat term drops out.
    """
    if not compressed:
        return RateTerms(
            i1=0.0,
            i2=tuple(mi((X1, X2), yt) for yt in RECEIVERS),
            i_joint=tuple(mi(X1, yt, X2) for yt in RECEIVERS),
            i_direct=tuple(mi(X1, yt) for yt in RECEIVERS),
            i3=mi(X2, Y2, X1),
        )

    i1 = mi(YHAT, YR, X2)
    i2 = tuple(mi((X1, X2), yt) + mi(YHAT, (X1, yt), X2) for yt in RECEIVERS)

    # Yhat - (Yr, X2) - (X1, Y1) gives I2(1) - I1 = I(X1,X2;Y1) - I(Yhat;Yr|X1,X2,Y1)
    residual = mi(YHAT, YR, (X1, X2, Y1))
    assert abs((i2[0] - i1) - (mi((X1, X2), Y1) - residual)) <= 1e-8, (
        'test channel does not factor through (Yr, X2)'
    )

    return RateTerms(
        i1=i1,
        i2=i2,
        i_joint=tuple(mi(X1, (YHAT, yt), X2) for yt in RECEIVERS),
        i_direct=tuple(mi(X1, yt) for yt in RECEIVERS),
        i3=mi(X2, Y2, X1) + mi(YHAT, (X1, Y2), X2),
    )


def compute_terms(channel, policy):
    pmf = joint_pmf(channel, policy)
    return assemble_terms(partial(conditional_mi, pmf), policy.compressed)


def _receiver(t):
    if t not in (1, 2):
        raise ValidationError(f'Receiver index must be 1 or 2, got {t!r}.')
    return t - 1


def r1_of_r2(terms, t, r2):
    """R1(t)(R2): rate receiver t decodes at relay rate `r2`."""
    k = _receiver(t)
    validate_rate(r2, 'r2')
    return max(min(terms.i_joint[k], terms.i2[k] - r2), terms.i_direct[k])


def decoding_mode(terms, t, r2):
    """'joint' when the compressed-relay arm is strictly better than treating X2 as noise."""
    k = _receiver(t)
    return JOINT if min(terms.i_joint[k], terms.i2[k] - r2) > terms.i_direct[k] else SEPARATE


def secrecy_objective(terms, r2):
    """R1(1)(R2) - R1(2)(R2), before the [.]^+ clamp."""
    return r1_of_r2(terms, 1, r2) - r1_of_r2(terms, 2, r2)


def breakpoints(terms):
    """Candidate relay rates, ascending, all >= I1.

    The last entry is where both receivers reach their separate-decoding
    floor, i.e. the R2 -> infinity value of the objective.
    """
    floor = max(terms.i1, *(terms.i2[k] - terms.i_direct[k] for k in range(2)))
    candidates = {terms.i1, terms.i3, floor}
    for k in range(2):
        candidates.add(terms.i2[k] - terms.i_joint[k])
        candidates.add(terms.i2[k] - terms.i_direct[k])
    return sorted(r2 for r2 in candidates if r2 >= terms.i1)


def breakdown_at(terms, r2):
    dest = r1_of_r2(terms, 1, r2)
    eve = r1_of_r2(terms, 2, r2)
    return RateBreakdown(
        r1_dest=dest,
        r1_eve=eve,
        r2=r2,
        decoding_mode=(decoding_mode(terms, 1, r2), decoding_mode(terms, 2, r2)),
        rs=max(dest - eve, 0.0),
    )


def optimize_r2(terms):
    """Exact maximisation over R2 >= I1; ties go to the smallest R2."""
    tolerance = settings.RATE_TIE_TOLERANCE
    best_r2, best_value = None, None
    for r2 in breakpoints(terms):
        value = secrecy_objective(terms, r2)
        if best_value is None or value > best_value + tolerance:
            best_r2, best_value = r2, value
    return breakdown_at(terms, best_r2)


def secrecy_rate(channel, policy):
    return optimize_r2(compute_terms(channel, policy))


def wt_hi_rate(channel, px1, px2):
    """Helping-interferer baseline: the relay ignores Yr and only sends dummy codewords."""
    return secrecy_rate(channel, InputPolicy(px1, px2, None))


def very_strong_relay_rate(terms):
    """R2* = max{I1, I3}, the relay rate behind the very-strong lower bound."""
    return max(terms.i1, terms.i3)


def very_strong_lower_bound(terms):
    """Lower bound on the secrecy rate obtained by fixing R2 = R2*.

    min[ I(X1;Yhat,Y1|X2) - I(X1;Y2),
         I2(1) - I2(2),
         I(X1,X2;Y1) - I(Yhat;Yr|X1,X2,Y1) - I(X1;Y2) ]^+

    with the third term written as I2(1) - I1 - I(X1;Y2).
    """
    eve = terms.i_direct[1]
    value = min(
        terms.i_joint[0] - eve,
        terms.i2[0] - terms.i2[1],
        terms.i2[0] - terms.i1 - eve,
    )
    return max(value, 0.0)
