"""
Management command to search the power budget for the best secrecy rate
"""

from RelaySecrecy.experiments.forms import PowerForm
from RelaySecrecy.experiments.management.base import ExperimentCommand
from RelaySecrecy.gaussian.models import PowerBudget
from RelaySecrecy.gaussian.power import optimize_powers


class Command(ExperimentCommand):
    help = 'Optimise (p1, p2) over [0, p1-max] x [0, p2-max] and print the best allocation'
    form_class = PowerForm

    def add_arguments(self, parser):
        self.add_gain_arguments(parser)
        parser.add_argument('--p1-max', help='Source power budget')
        parser.add_argument('--p2-max', help='Relay power budget')
        parser.add_argument('--resolution', help='Grid points per power axis, endpoints included')

    def compute(self, data):
        budget = PowerBudget(data['p1_max'], data['p2_max'])
        solution = optimize_powers(data['a'], data['b'], data['c'], budget, data['resolution'])
        self.emit_json(solution.as_dict())
