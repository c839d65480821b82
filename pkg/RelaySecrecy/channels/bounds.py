"""
Upper bound on the probability that the relay's compression index l_j
collides with l_{j-1}:

    2^{-n(R2 - 2d)} * ( 2/(1-e') + exp{ -[ (1-e') 2^{n(R2 - I1 - d) - 3} - n(R2 - 2d) ln 2 ] } )

with d = delta(e'). The double exponential overflows for moderate n, so the
bound is evaluated in the log domain.
"""

import numpy as np

from RelaySecrecy.information.models import LN2

from .models import Lemma1Input

SMALLEST_BOUND = float(np.finfo(float).tiny)


def _log_bracket(inp):
    """Natural log of the bracketed factor; the rest of the bound is 2^{-n(R2-2d)}."""
    n, eps, delta = inp.n, inp.eps_prime, inp.delta_eps
    with np.errstate(over='ignore'):
        growth = np.exp2(n * (inp.r2 - inp.i1 - delta) - 3.0)
    exponent = (1.0 - eps) * growth - n * (inp.r2 - 2.0 * delta) * LN2
    return float(np.logaddexp(np.log(2.0 / (1.0 - eps)), -exponent))


def lemma1_log2_bound(inp):
    """log2 of the bound; finite even where the bound itself underflows."""
    if not isinstance(inp, Lemma1Input):
        inp = Lemma1Input(**inp)
    return -inp.n * (inp.r2 - 2.0 * inp.delta_eps) + _log_bracket(inp) / LN2


def lemma1_scaled_bound(inp):
    """The bound multiplied by 2^{n(R2 - 2d)}; tends to 2/(1-e') when R2 > I1 + d."""
    if not isinstance(inp, Lemma1Input):
        inp = Lemma1Input(**inp)
    return float(np.exp(_log_bracket(inp)))


def lemma1_bound(inp):
    """The bound itself, floored at the smallest normal float so it stays positive.

    Use lemma1_log2_bound when the floor is reached.
    """
    return max(float(np.exp2(lemma1_log2_bound(inp))), SMALLEST_BOUND)
