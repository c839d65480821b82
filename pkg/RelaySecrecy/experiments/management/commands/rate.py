"""
Management command to evaluate the Gaussian secrecy rate at fixed powers
"""

import logging

from RelaySecrecy.channels.rates import breakdown_at
from RelaySecrecy.experiments.forms import RatePointForm
from RelaySecrecy.experiments.management.base import ExperimentCommand
from RelaySecrecy.gaussian.models import GaussianScenario
from RelaySecrecy.gaussian.rates import (
    closed_form_terms,
    compression_choice,
    gaussian_wt_hi,
    regime,
    rs_fixed,
    rs_I,
    rs_II,
)

logger = logging.getLogger(__name__)


class Command(ExperimentCommand):
    help = 'Print the secrecy rate of the Gaussian relay-eavesdropper channel at powers (p1, p2)'
    form_class = RatePointForm

    def add_arguments(self, parser):
        self.add_gain_arguments(parser)
        parser.add_argument('--p1', help='Source power')
        parser.add_argument('--p2', help='Relay power')

    def compute(self, data):
        s = GaussianScenario(data['a'], data['b'], data['c'], data['p1'], data['p2'])
        choice = compression_choice(s)
        breakdown = breakdown_at(closed_form_terms(s, choice.delta_c), choice.r2)
        logger.info(f'Rate query {s}')
        self.emit_json({
            'scenario': {'a': s.a, 'b': s.b, 'c': s.c, 'p1': s.p1, 'p2': s.p2},
            'regime': regime(s),
            'rs_I': rs_I(s),
            'rs_II': rs_II(s),
            'rate': rs_fixed(s),
            'wt_hi': gaussian_wt_hi(s),
            'delta_c_star': choice.delta_c,
            'r2_star': choice.r2,
            'degenerate': choice.degenerate,
            'breakdown': breakdown.as_dict(),
        })
