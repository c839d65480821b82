"""
Search over the class of input distributions p(x1) p(x2) p(yhat | yr, x2).

The class is a product of probability simplices. It is enumerated on a
uniform grid, then the incumbent is refined by local moves whose step is
halved a fixed number of times. The result is a lower bound on the true
maximum, never a certified optimum.
"""

import itertools
import logging
import math

import numpy as np
from django.conf import settings
from scipy.special import comb

from .models import (
    EXTREMELY_STRONG,
    NORMAL,
    VERY_STRONG,
    EavesdroppingReport,
    InputPolicy,
    SearchConfig,
)
from .rates import compute_terms, optimize_r2

logger = logging.getLogger(__name__)

MAX_CLIMB_PASSES = 100


class PolicyGridTooLarge(RuntimeError):
    """The requested policy grid exceeds the configured cell budget."""


def simplex_grid(size, resolution):
    """Points of the simplex over `size` symbols whose coordinates are multiples of 1/resolution."""
    points = []
    slots = resolution + size - 1
    for bars in itertools.combinations(range(slots), size - 1):
        edges = (-1,) + bars + (slots,)
        counts = np.diff(edges) - 1
        points.append(counts / resolution)
    return points


def simplex_grid_size(size, resolution):
    return int(comb(resolution + size - 1, size - 1, exact=True))


class _PolicySpace:
    """A policy viewed as a flat list of distributions: p(x1), p(x2), then one row per (yr, x2)."""

    def __init__(self, channel, yhat_size):
        sizes = channel.sizes
        self.channel = channel
        self.yhat_size = yhat_size
        self.rows = [] if yhat_size == 0 else list(itertools.product(range(sizes['yr']), range(sizes['x2'])))
        self.component_sizes = [sizes['x1'], sizes['x2']] + [yhat_size] * len(self.rows)

    def policy(self, components):
        test_channel = None
        if self.rows:
            sizes = self.channel.sizes
            test_channel = np.empty((sizes['yr'], sizes['x2'], self.yhat_size))
            for (yr, x2), row in zip(self.rows, components[2:]):
                test_channel[yr, x2] = row
        return InputPolicy(components[0], components[1], test_channel)

    def components(self, policy):
        rows = [policy.test_channel[yr, x2] for yr, x2 in self.rows]
        return [np.array(policy.px1), np.array(policy.px2)] + [np.array(row) for row in rows]

    def cell_count(self, resolution):
        return math.prod(simplex_grid_size(size, resolution) for size in self.component_sizes)

    def evaluate(self, components):
        policy = self.policy(components)
        return policy, optimize_r2(compute_terms(self.channel, policy))


def _check_budget(space, search):
    cells = space.cell_count(search.resolution)
    if cells > search.cell_budget:
        logger.warning(f'Policy grid of {cells} cells exceeds budget {search.cell_budget}')
        raise PolicyGridTooLarge(
            f'Policy grid has {cells} cells, more than the budget of {search.cell_budget}; '
            f'lower the resolution or the Yhat alphabet size.'
        )
    return cells


def _neighbours(components, step):
    """Move up to `step` of mass between two symbols of one distribution."""
    for index, dist in enumerate(components):
        for gain, loss in itertools.permutations(range(dist.shape[0]), 2):
            mass = min(step, dist[loss])
            if mass <= 0:
                continue
            moved = dist.copy()
            moved[gain] += mass
            moved[loss] = max(moved[loss] - mass, 0.0)
            yield components[:index] + [moved] + components[index + 1:]


def _climb(space, incumbent, step):
    """First-improvement local search at a fixed step."""
    tolerance = settings.RATE_TIE_TOLERANCE
    policy, breakdown = incumbent
    components = space.components(policy)
    for _ in range(MAX_CLIMB_PASSES):
        improved = False
        for candidate in _neighbours(components, step):
            cand_policy, cand_breakdown = space.evaluate(candidate)
            if cand_breakdown.rs > breakdown.rs + tolerance:
                policy, breakdown, components = cand_policy, cand_breakdown, candidate
                improved = True
                break
        if not improved:
            break
    return policy, breakdown


def maximize_over_policies(channel, search=None):
    """Best (InputPolicy, RateBreakdown) found on the grid; a lower bound on the secrecy rate."""
    search = search or SearchConfig()
    tolerance = settings.RATE_TIE_TOLERANCE
    space = _PolicySpace(channel, search.resolve_yhat_size(channel))
    cells = _check_budget(space, search)
    logger.info(f'Searching {cells} policy grid cells (|Yhat|={space.yhat_size}, resolution={search.resolution})')

    grids = [simplex_grid(size, search.resolution) for size in space.component_sizes]
    best = None
    for combo in itertools.product(*grids):
        candidate = space.evaluate(list(combo))
        if best is None or candidate[1].rs > best[1].rs + tolerance:
            best = candidate

    step = 1.0 / search.resolution
    for _ in range(search.refinements):
        step /= 2.0
        best = _climb(space, best, step)

    if search.restarts:
        rng = np.random.default_rng(search.seed)
        for _ in range(search.restarts):
            start = space.evaluate([rng.dirichlet(np.ones(size)) for size in space.component_sizes])
            candidate = _climb(space, start, step)
            if candidate[1].rs > best[1].rs + tolerance:
                best = candidate

    logger.info(f'Best secrecy rate on the policy grid: {best[1].rs:.12g} bits')
    return best


def classify_eavesdropping(channel, search=None):
    """Check the very-strong and extremely-strong eavesdropping inequalities on the policy grid.

    very strong:      I(X1;Y2) >= I(X1;Y1|X2)
    extremely strong: I(X1;Y2) >= min{ I(X1;Yhat,Y1|X2), I2(1) - I1 }

    The returned kind is the strongest class whose inequality held at every
    grid point checked; the report is labelled approximate.
    """
    search = search or SearchConfig()
    tolerance = settings.RATE_TIE_TOLERANCE

    # I(X1;Y1|X2) and I(X1;Y2) do not involve the test channel
    plain = _PolicySpace(channel, 0)
    _check_budget(plain, search)
    very_margin, very_worst = math.inf, None
    points = 0
    for px1, px2 in itertools.product(*(simplex_grid(size, search.resolution) for size in plain.component_sizes)):
        policy = InputPolicy(px1, px2, None)
        terms = compute_terms(channel, policy)
        margin = terms.i_direct[1] - terms.i_joint[0]
        points += 1
        if margin < very_margin:
            very_margin, very_worst = margin, policy

    space = _PolicySpace(channel, search.resolve_yhat_size(channel))
    _check_budget(space, search)
    extreme_margin, extreme_worst = math.inf, None
    for combo in itertools.product(*(simplex_grid(size, search.resolution) for size in space.component_sizes)):
        policy = space.policy(list(combo))
        terms = compute_terms(channel, policy)
        margin = terms.i_direct[1] - min(terms.i_joint[0], terms.i2[0] - terms.i1)
        points += 1
        if margin < extreme_margin:
            extreme_margin, extreme_worst = margin, policy

    very_violation = very_worst if very_margin < -tolerance else None
    extreme_violation = extreme_worst if extreme_margin < -tolerance else None
    very = very_violation is None
    extreme = very and extreme_violation is None
    kind = EXTREMELY_STRONG if extreme else VERY_STRONG if very else NORMAL
    logger.info(f'Eavesdropping class on the grid: {kind} ({points} points)')
    return EavesdroppingReport(
        kind=kind,
        very_strong=very,
        extremely_strong=extreme_violation is None,
        very_strong_margin=very_margin,
        extremely_strong_margin=extreme_margin,
        points_checked=points,
        very_strong_violation=very_violation,
        extremely_strong_violation=extreme_violation,
    )
