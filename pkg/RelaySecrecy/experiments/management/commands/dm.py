"""
Management command to evaluate a discrete memoryless channel fixture
"""

import logging

from RelaySecrecy.channels.fixtures import load_channel
from RelaySecrecy.channels.models import SearchConfig
from RelaySecrecy.channels.search import classify_eavesdropping, maximize_over_policies
from RelaySecrecy.experiments.forms import DmForm
from RelaySecrecy.experiments.management.base import ExperimentCommand

logger = logging.getLogger(__name__)


class Command(ExperimentCommand):
    help = 'Search the input distributions of a JSON channel fixture for the best secrecy rate'
    form_class = DmForm

    def add_arguments(self, parser):
        parser.add_argument('--fixture', help='JSON channel file (defaults to the shipped binary channel)')
        parser.add_argument('--yhat-size', help='Alphabet size of the compressed relay output; 0 disables it')
        parser.add_argument('--resolution', help='Divisions of each probability simplex')
        parser.add_argument('--refinements', help='Step halvings around the best grid point')
        parser.add_argument('--restarts', help='Random restarts of the local search')
        parser.add_argument('--seed', help='Seed for the random restarts')
        parser.add_argument('--classify', action='store_true', help='Also check the eavesdropping class')

    def compute(self, data):
        channel = load_channel(data['fixture'])
        overrides = {
            name: data[name]
            for name in ('yhat_size', 'resolution', 'refinements', 'restarts', 'seed')
            if data[name] is not None
        }
        search = SearchConfig(**overrides)
        logger.info(f'Evaluating {data["fixture"]} with {search}')
        policy, breakdown = maximize_over_policies(channel, search)
        payload = {
            'fixture': data['fixture'],
            'yhat_size': search.resolve_yhat_size(channel),
            'policy': policy.as_dict(),
            'breakdown': breakdown.as_dict(),
            'lower_bound': True,
        }
        if data['classify']:
            payload['eavesdropping'] = classify_eavesdropping(channel, search).as_dict()
        self.emit_json(payload)
