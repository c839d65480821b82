"""
Power control over the rectangle [0, P1_max] x [0, P2_max].

A uniform grid with both endpoints on each axis is evaluated in one numpy
pass; the incumbent is then refined on finer local grids. Ties go to the
lexicographically smallest (p1, p2).
"""

import logging

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from RelaySecrecy.validators import validate_gain

from .models import PowerBudget, PowerSolution
from .rates import rs_I_grid

logger = logging.getLogger(__name__)

IMPROVEMENT_TOLERANCE = 1e-12
REFINEMENT_FACTOR = 10


def _argmax(objective, p1_axis, p2_axis):
    p1, p2 = np.meshgrid(p1_axis, p2_axis, indexing='ij')
    values = np.broadcast_to(objective(p1, p2), p1.shape)
    # argmax returns the first maximum in row-major order: smallest p1, then p2
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    return float(p1_axis[i]), float(p2_axis[j]), float(values[i, j])


def _local_axis(centre, step, upper):
    points = centre + step * np.arange(-REFINEMENT_FACTOR, REFINEMENT_FACTOR + 1) / REFINEMENT_FACTOR
    return np.unique(np.clip(points, 0.0, upper))


def search_powers(objective, budget, resolution=None, refinements=None):
    """Maximise `objective(p1_array, p2_array)` over the power budget.

    The objective must be vectorised and return nonnegative rates.
    """
    resolution = settings.POWER_GRID_RESOLUTION if resolution is None else resolution
    refinements = settings.POWER_REFINEMENTS if refinements is None else refinements
    if resolution < 2:
        raise ValidationError(f'resolution must be at least 2, got {resolution!r}.')

    p1_axis = np.linspace(0.0, budget.p1_max, resolution)
    p2_axis = np.linspace(0.0, budget.p2_max, resolution)
    p1, p2, rate = _argmax(objective, p1_axis, p2_axis)

    step1 = budget.p1_max / (resolution - 1)
    step2 = budget.p2_max / (resolution - 1)
    for _ in range(refinements):
        cand_p1, cand_p2, cand_rate = _argmax(
            objective, _local_axis(p1, step1, budget.p1_max), _local_axis(p2, step2, budget.p2_max)
        )
        if cand_rate > rate + IMPROVEMENT_TOLERANCE:
            p1, p2, rate = cand_p1, cand_p2, cand_rate
        step1 /= REFINEMENT_FACTOR
        step2 /= REFINEMENT_FACTOR

    return PowerSolution(p1=p1, p2=p2, rate=max(rate, 0.0), grid_step=(step1, step2))


def optimize_powers(a, b, c, budget, resolution=None, refinements=None):
    """Best (P1, P2) for the relayed rate; P2 = 0 covers the relay staying silent."""
    for name, gain in (('a', a), ('b', b), ('c', c)):
        validate_gain(gain, name)
    if not isinstance(budget, PowerBudget):
        budget = PowerBudget(*budget)
    solution = search_powers(
        lambda p1, p2: np.maximum(rs_I_grid(a, b, c, p1, p2), 0.0),
        budget,
        resolution,
        refinements,
    )
    logger.info(f'Power control a={a} b={b} c={c}: rate {solution.rate:.6g} at ({solution.p1:.6g}, {solution.p2:.6g})')
    return solution
