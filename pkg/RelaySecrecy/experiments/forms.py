from django import forms
from django.conf import settings
from django.core.exceptions import ValidationError

from RelaySecrecy.validators import validate_scheme_list


def nonnegative_field(help_text):
    return forms.FloatField(min_value=0.0, help_text=help_text)


def command_error_text(form):
    """Flatten form errors into one line for CommandError."""
    parts = []
    for name, messages in form.errors.items():
        label = 'arguments' if name == '__all__' else f'--{name.replace("_", "-")}'
        parts.extend(f'{label}: {message}' for message in messages)
    return '; '.join(parts)


class GainsForm(forms.Form):
    a = nonnegative_field('Source to eavesdropper gain')
    b = nonnegative_field('Relay to destination gain')
    c = nonnegative_field('Source to relay gain')


class RatePointForm(GainsForm):
    p1 = nonnegative_field('Source power')
    p2 = nonnegative_field('Relay power')


class PowerForm(GainsForm):
    p1_max = nonnegative_field('Source power budget')
    p2_max = nonnegative_field('Relay power budget')
    resolution = forms.IntegerField(min_value=2, required=False, help_text='Grid points per power axis')

    def clean_resolution(self):
        resolution = self.cleaned_data.get('resolution')
        return settings.POWER_GRID_RESOLUTION if resolution is None else resolution


class DmForm(forms.Form):
    fixture = forms.CharField(required=False)
    yhat_size = forms.IntegerField(min_value=0, required=False)
    resolution = forms.IntegerField(min_value=1, required=False)
    refinements = forms.IntegerField(min_value=0, required=False)
    restarts = forms.IntegerField(min_value=0, required=False)
    seed = forms.IntegerField(min_value=0, required=False)
    classify = forms.BooleanField(required=False)

    def clean_fixture(self):
        fixture = self.cleaned_data.get('fixture')
        return fixture or str(settings.CANONICAL_CHANNEL_FIXTURE)


class SweepForm(forms.Form):
    a = nonnegative_field('Source to eavesdropper gain')
    c = nonnegative_field('Source to relay gain')
    b_min = nonnegative_field('First relay to destination gain')
    b_max = nonnegative_field('Last relay to destination gain')
    steps = forms.IntegerField(min_value=1)
    p1_max = nonnegative_field('Source power budget')
    p2_max = nonnegative_field('Relay power budget')
    power_control = forms.BooleanField(required=False)
    schemes = forms.CharField(required=False)
    resolution = forms.IntegerField(min_value=2, required=False)
    out = forms.CharField(required=False)

    def clean_schemes(self):
        raw = self.cleaned_data.get('schemes')
        if not raw:
            return list(settings.SWEEP_SCHEMES)
        schemes = [name.strip() for name in raw.split(',') if name.strip()]
        validate_scheme_list(schemes)
        return schemes

    def clean_resolution(self):
        resolution = self.cleaned_data.get('resolution')
        return settings.POWER_GRID_RESOLUTION if resolution is None else resolution

    def clean(self):
        cleaned_data = super().clean()
        b_min, b_max, steps = cleaned_data.get('b_min'), cleaned_data.get('b_max'), cleaned_data.get('steps')
        if b_min is not None and b_max is not None:
            if b_min > b_max:
                raise ValidationError('--b-min must not exceed --b-max.')
            if steps == 1 and b_min != b_max:
                raise ValidationError('A single step needs --b-min equal to --b-max.')
        return cleaned_data
