"""
Management command to sweep the relay-destination gain and write CSV
"""

import io

from django.core.management.base import CommandError

from RelaySecrecy.experiments.forms import SweepForm
from RelaySecrecy.experiments.management.base import ExperimentCommand
from RelaySecrecy.experiments.models import SweepSpec
from RelaySecrecy.experiments.sweeps import run_sweep, write_sweep_csv
from RelaySecrecy.gaussian.models import PowerBudget


class Command(ExperimentCommand):
    help = 'Compare secrecy-rate schemes over a range of relay-destination gains b'
    form_class = SweepForm

    def add_arguments(self, parser):
        self.add_gain_arguments(parser, names=('a', 'c'))
        parser.add_argument('--b-min', help='First value of b')
        parser.add_argument('--b-max', help='Last value of b')
        parser.add_argument('--steps', help='Number of b values, endpoints included')
        parser.add_argument('--p1-max', help='Source power budget')
        parser.add_argument('--p2-max', help='Relay power budget')
        parser.add_argument('--power-control', action='store_true', help='Optimise the powers at every b')
        parser.add_argument('--schemes', help='Comma-separated subset of proposed,wt_hi,direct')
        parser.add_argument('--resolution', help='Grid points per power axis under power control')
        parser.add_argument('--out', help='Write the CSV here instead of standard output')

    def compute(self, data):
        spec = SweepSpec(
            a=data['a'],
            c=data['c'],
            b_min=data['b_min'],
            b_max=data['b_max'],
            steps=data['steps'],
            budget=PowerBudget(data['p1_max'], data['p2_max']),
            power_control=data['power_control'],
            schemes=data['schemes'],
            resolution=data['resolution'],
        )
        rows = run_sweep(spec)
        buffer = io.StringIO()
        write_sweep_csv(rows, spec.schemes, spec.power_control, buffer)

        if not data['out']:
            self.stdout.write(buffer.getvalue(), ending='')
            return
        try:
            with open(data['out'], 'w', encoding='utf-8', newline='') as handle:
                handle.write(buffer.getvalue())
        except OSError as exc:
            raise CommandError(f'Cannot write {data["out"]}: {exc.strerror}')
        self.stdout.write(self.style.SUCCESS(f'Wrote {len(rows)} rows to {data["out"]}'))
