"""
Sweeps over the relay-destination gain b and their CSV form.

CSV layout: header row `b, <scheme>..., p1_<scheme>, p2_<scheme>...`
(the power columns only with power control), numbers with
CSV_SIGNIFICANT_DIGITS significant digits, LF line endings.
"""

import csv
import logging

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from RelaySecrecy.gaussian.models import GaussianScenario, PowerBudget
from RelaySecrecy.gaussian.power import optimize_powers, search_powers
from RelaySecrecy.gaussian.rates import gaussian_wt_hi, rs_fixed, rs_II, rs_II_grid, wt_hi_grid

from .models import PROPOSED, WT_HI, SweepRow

logger = logging.getLogger(__name__)


def _fixed_power_rate(scheme, s):
    if scheme == PROPOSED:
        return rs_fixed(s)
    if scheme == WT_HI:
        return gaussian_wt_hi(s)
    return rs_II(s)


def _power_controlled(scheme, spec, b):
    if scheme == PROPOSED:
        return optimize_powers(spec.a, b, spec.c, spec.budget, spec.resolution)
    if scheme == WT_HI:
        return search_powers(lambda p1, p2: wt_hi_grid(spec.a, b, p1, p2), spec.budget, spec.resolution)
    # the relay stays silent, so only the source power is searched
    silent = PowerBudget(spec.budget.p1_max, 0.0)
    return search_powers(lambda p1, p2: rs_II_grid(spec.a, p1), silent, spec.resolution)


def run_sweep(spec):
    """One SweepRow per b on a uniform grid including both endpoints."""
    logger.info(
        f'Sweeping b over [{spec.b_min}, {spec.b_max}] in {spec.steps} steps '
        f'(a={spec.a}, c={spec.c}, power control {"on" if spec.power_control else "off"})'
    )
    rows = []
    for b in np.linspace(spec.b_min, spec.b_max, spec.steps):
        b = float(b)
        if not spec.power_control:
            s = GaussianScenario(spec.a, b, spec.c, spec.budget.p1_max, spec.budget.p2_max)
            rows.append(SweepRow(b, {scheme: _fixed_power_rate(scheme, s) for scheme in spec.schemes}))
            continue
        rates, powers = {}, {}
        for scheme in spec.schemes:
            solution = _power_controlled(scheme, spec, b)
            rates[scheme] = solution.rate
            powers[scheme] = (solution.p1, solution.p2)
        rows.append(SweepRow(b, rates, powers))
    return rows


def _format(value):
    return f'{value:.{settings.CSV_SIGNIFICANT_DIGITS}g}'


def sweep_header(schemes, power_control):
    header = ['b', *schemes]
    if power_control:
        for scheme in schemes:
            header += [f'p1_{scheme}', f'p2_{scheme}']
    return header


def write_sweep_csv(rows, schemes, power_control, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(sweep_header(schemes, power_control))
    for row in rows:
        record = [_format(row.b)] + [_format(row.rates[scheme]) for scheme in schemes]
        if power_control:
            for scheme in schemes:
                record += [_format(power) for power in row.powers[scheme]]
        writer.writerow(record)


def read_sweep_csv(stream):
    """Parse CSV written by write_sweep_csv; returns (schemes, power_control, rows)."""
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationError('Sweep CSV is empty; a header row is required.')
    if not header or header[0] != 'b':
        raise ValidationError(f'Sweep CSV header must start with "b", got {header!r}.')
    schemes = [name for name in header[1:] if not name.startswith(('p1_', 'p2_'))]
    power_control = len(header) > 1 + len(schemes)
    if header != sweep_header(schemes, power_control):
        raise ValidationError(f'Unexpected sweep CSV header {header!r}.')

    rows = []
    for line, record in enumerate(reader, start=2):
        if len(record) != len(header):
            raise ValidationError(f'Sweep CSV line {line}: expected {len(header)} fields, got {len(record)}.')
        try:
            values = [float(field) for field in record]
        except ValueError:
            raise ValidationError(f'Sweep CSV line {line}: non-numeric field in {record!r}.')
        rates = dict(zip(schemes, values[1:1 + len(schemes)]))
        powers = None
        if power_control:
            pairs = values[1 + len(schemes):]
            powers = {scheme: (pairs[2 * i], pairs[2 * i + 1]) for i, scheme in enumerate(schemes)}
        rows.append(SweepRow(values[0], rates, powers))
    return schemes, power_control, rows
