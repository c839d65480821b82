"""
Shared plumbing for the experiment management commands.
"""

import json
import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from RelaySecrecy.channels.search import PolicyGridTooLarge
from RelaySecrecy.experiments.forms import command_error_text
from RelaySecrecy.information.gaussian import SingularCovarianceError

logger = logging.getLogger(__name__)


class ExperimentCommand(BaseCommand):
    """Validate options through `form_class`, run `compute`, turn failures into CommandError."""

    form_class = None

    def add_gain_arguments(self, parser, names=('a', 'b', 'c')):
        helps = {
            'a': 'Source to eavesdropper gain (linear)',
            'b': 'Relay to destination gain (linear)',
            'c': 'Source to relay gain (linear)',
        }
        for name in names:
            parser.add_argument(f'--{name}', help=helps[name])

    def validated(self, options):
        form = self.form_class(data={name: options.get(name) for name in self.form_class.base_fields})
        if not form.is_valid():
            message = command_error_text(form)
            logger.warning(f'{self.__module__.rsplit(".", 1)[-1]}: rejected options: {message}')
            raise CommandError(message)
        return form.cleaned_data

    def handle(self, *args, **options):
        data = self.validated(options)
        try:
            self.compute(data)
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages))
        except (PolicyGridTooLarge, SingularCovarianceError) as exc:
            raise CommandError(str(exc))

    def compute(self, data):
        raise NotImplementedError('subclasses of ExperimentCommand must provide a compute() method')

    def emit_json(self, payload):
        self.stdout.write(json.dumps(payload, indent=2, sort_keys=True))
