import io
import json
import math
import os
import tempfile

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from RelaySecrecy.gaussian.models import GaussianScenario, PowerBudget
from RelaySecrecy.gaussian.rates import gaussian_wt_hi, rs_fixed

from .forms import PowerForm, SweepForm
from .models import DIRECT, PROPOSED, WT_HI, SweepRow, SweepSpec
from .sweeps import read_sweep_csv, run_sweep, sweep_header, write_sweep_csv

FIXTURE_RATE = 1.0 + 0.1 * math.log2(0.1) + 0.9 * math.log2(0.9)
RELAY_FIXTURE_RATE = 1.0 - FIXTURE_RATE
BUDGET = PowerBudget(5.0, 5.0)


def C(x):
    return 0.5 * math.log2(1.0 + x)


def run(name, **options):
    out = io.StringIO()
    call_command(name, stdout=out, **options)
    return out.getvalue()


def sweep_text(rows, schemes, power_control):
    buffer = io.StringIO()
    write_sweep_csv(rows, schemes, power_control, buffer)
    return buffer.getvalue()


class FormTests(SimpleTestCase):
    def test_power_form_defaults_resolution(self):
        form = PowerForm(data={'a': 1, 'b': 2, 'c': 0.8, 'p1_max': 5, 'p2_max': 5})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['resolution'], 201)

    def test_sweep_form_parses_schemes(self):
        data = {'a': 1, 'c': 0.8, 'b_min': 0, 'b_max': 3, 'steps': 4, 'p1_max': 5, 'p2_max': 5,
                'schemes': 'wt_hi, proposed'}
        form = SweepForm(data=data)
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['schemes'], ['wt_hi', 'proposed'])

    def test_sweep_form_rejects(self):
        base = {'a': 1, 'c': 0.8, 'b_min': 0, 'b_max': 3, 'steps': 4, 'p1_max': 5, 'p2_max': 5}
        for override in ({'b_min': 4}, {'steps': 1}, {'steps': 0}, {'schemes': 'proposed,relay'},
                         {'p1_max': -1}):
            with self.subTest(override=override):
                self.assertFalse(SweepForm(data={**base, **override}).is_valid())

    def test_single_step_sweep_at_one_point(self):
        data = {'a': 1, 'c': 0.8, 'b_min': 2, 'b_max': 2, 'steps': 1, 'p1_max': 5, 'p2_max': 5}
        self.assertTrue(SweepForm(data=data).is_valid())


class SweepSpecTests(SimpleTestCase):
    def test_validation(self):
        with self.assertRaises(ValidationError):
            SweepSpec(1.0, 0.8, 3.0, 2.0, 5, BUDGET)
        with self.assertRaises(ValidationError):
            SweepSpec(1.0, 0.8, 0.0, 2.0, 0, BUDGET)
        with self.assertRaises(ValidationError):
            SweepSpec(-1.0, 0.8, 0.0, 2.0, 5, BUDGET)
        with self.assertRaises(ValidationError):
            SweepSpec(1.0, 0.8, 0.0, 2.0, 5, BUDGET, schemes=['proposed', 'proposed'])

    def test_rows_reject_negative_rates(self):
        with self.assertRaises(ValidationError):
            SweepRow(1.0, {PROPOSED: -0.1})


class FixedPowerSweepTests(SimpleTestCase):
    def test_rows_follow_point_rates(self):
        rows = run_sweep(SweepSpec(1.0, 0.8, 0.0, 30.0, 7, BUDGET))
        self.assertEqual([row.b for row in rows], [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0])
        for row in rows:
            s = GaussianScenario(1.0, row.b, 0.8, 5.0, 5.0)
            self.assertEqual(row.rates[PROPOSED], rs_fixed(s))
            self.assertEqual(row.rates[WT_HI], gaussian_wt_hi(s))
            self.assertEqual(row.rates[DIRECT], 0.0)
            self.assertIsNone(row.powers)

    def test_strong_relay_link_beats_interference(self):
        row, = run_sweep(SweepSpec(1.0, 0.8, 20.0, 20.0, 1, BUDGET))
        self.assertGreater(row.rates[PROPOSED], row.rates[WT_HI])

    def test_relaying_beats_interference_against_a_strong_eavesdropper(self):
        row, = run_sweep(SweepSpec(6.0, 0.8, 20.0, 20.0, 1, BUDGET))
        self.assertGreater(row.rates[PROPOSED], row.rates[WT_HI])

    def test_scheme_subset_and_order(self):
        rows = run_sweep(SweepSpec(1.0, 0.8, 0.0, 1.0, 2, BUDGET, schemes=[WT_HI, PROPOSED]))
        self.assertEqual(list(rows[0].rates), [WT_HI, PROPOSED])


class PowerControlledSweepTests(SimpleTestCase):
    """Power control on, c = 0.8, budget (5, 5), 61 values of b in [0, 30]."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.weak = run_sweep(SweepSpec(1.0, 0.8, 0.0, 30.0, 61, BUDGET, power_control=True))
        cls.strong = run_sweep(SweepSpec(6.0, 0.8, 0.0, 30.0, 61, BUDGET, power_control=True))

    def test_grid(self):
        self.assertEqual(len(self.weak), 61)
        self.assertEqual(self.weak[2].b, 1.0)
        self.assertEqual(self.weak[-1].b, 30.0)

    def test_relay_link_too_weak_to_help(self):
        for row in self.weak:
            if row.b <= 1.0:
                self.assertAlmostEqual(row.rates[PROPOSED], row.rates[WT_HI], delta=1e-9)
        self.assertGreater(self.weak[-1].rates[PROPOSED], self.weak[-1].rates[WT_HI])

    def test_interference_alone_fails_against_a_strong_eavesdropper(self):
        for row in self.strong:
            self.assertLessEqual(row.rates[WT_HI], 1e-12)
        self.assertGreater(self.strong[-1].rates[PROPOSED], 0.0)

    def test_relayed_rate_grows_with_the_relay_link(self):
        proposed = [row.rates[PROPOSED] for row in self.strong]
        for before, after in zip(proposed, proposed[1:]):
            self.assertGreaterEqual(after, before - 1e-7)

    def test_powers_stay_in_budget(self):
        for row in self.weak + self.strong:
            for p1, p2 in row.powers.values():
                self.assertTrue(0.0 <= p1 <= 5.0 and 0.0 <= p2 <= 5.0)
            self.assertEqual(row.powers[DIRECT][1], 0.0)

    def test_direct_scheme_uses_full_source_power(self):
        row, = run_sweep(SweepSpec(0.5, 0.8, 1.0, 1.0, 1, BUDGET, power_control=True, schemes=[DIRECT]))
        self.assertEqual(row.powers[DIRECT], (5.0, 0.0))
        self.assertAlmostEqual(row.rates[DIRECT], C(5.0) - C(2.5), places=12)


class SweepCsvTests(SimpleTestCase):
    def test_header(self):
        self.assertEqual(sweep_header([PROPOSED, WT_HI], False), ['b', 'proposed', 'wt_hi'])
        self.assertEqual(
            sweep_header([PROPOSED], True),
            ['b', 'proposed', 'p1_proposed', 'p2_proposed'],
        )

    def test_text_survives_a_read_back(self):
        for power_control in (False, True):
            with self.subTest(power_control=power_control):
                spec = SweepSpec(1.0, 0.8, 0.0, 12.0, 5, BUDGET, power_control=power_control, resolution=21)
                text = sweep_text(run_sweep(spec), spec.schemes, power_control)
                schemes, parsed_control, rows = read_sweep_csv(io.StringIO(text))
                self.assertEqual(tuple(schemes), spec.schemes)
                self.assertEqual(parsed_control, power_control)
                self.assertEqual(sweep_text(rows, schemes, parsed_control), text)

    def test_line_endings_and_precision(self):
        text = sweep_text([SweepRow(2.0, {PROPOSED: 1.0 / 3.0})], [PROPOSED], False)
        self.assertEqual(text, 'b,proposed\n2,0.333333333333\n')

    def test_malformed(self):
        for text in ('', 'x,proposed\n', 'b,proposed\n1,2,3\n', 'b,proposed\n1,abc\n', 'b,p1_proposed\n'):
            with self.subTest(text=text):
                with self.assertRaises(ValidationError):
                    read_sweep_csv(io.StringIO(text))


class RateCommandTests(SimpleTestCase):
    def test_regime_two_point(self):
        payload = json.loads(run('rate', a=1, b=2, c=0.8, p1=5, p2=5))
        self.assertEqual(payload['regime'], 2)
        self.assertAlmostEqual(payload['rate'], 0.270430, places=6)
        self.assertAlmostEqual(payload['rs_I'], C(15) - C(10), places=12)
        self.assertEqual(payload['rs_II'], 0.0)
        self.assertAlmostEqual(payload['delta_c_star'], 1.0, places=12)
        self.assertFalse(payload['degenerate'])
        self.assertEqual(payload['breakdown']['r2'], payload['r2_star'])
        self.assertLessEqual(payload['breakdown']['rs'], payload['rate'] + 1e-9)

    def test_silent_relay(self):
        payload = json.loads(run('rate', a=0.5, b=2, c=0.8, p1=5, p2=0))
        self.assertTrue(payload['degenerate'])
        self.assertIsNone(payload['delta_c_star'])
        self.assertAlmostEqual(payload['rate'], C(5) - C(2.5), places=12)

    def test_rejects_bad_options(self):
        with self.assertRaisesMessage(CommandError, '--a'):
            run('rate', a=-1, b=2, c=0.8, p1=5, p2=5)
        with self.assertRaisesMessage(CommandError, '--p2'):
            run('rate', a=1, b=2, c=0.8, p1=5)

    def test_deterministic(self):
        options = {'a': 6, 'b': 20, 'c': 0.8, 'p1': 5, 'p2': 5}
        self.assertEqual(run('rate', **options), run('rate', **options))


class PowerCommandTests(SimpleTestCase):
    def test_deaf_eavesdropper(self):
        payload = json.loads(run('power', a=0, b=2, c=0.8, p1_max=5, p2_max=5, resolution=11))
        self.assertEqual((payload['p1'], payload['p2']), (5.0, 0.0))
        self.assertAlmostEqual(payload['rate'], C(5), places=12)

    def test_deterministic(self):
        options = {'a': 6, 'b': 20, 'c': 0.8, 'p1_max': 5, 'p2_max': 5, 'resolution': 51}
        self.assertEqual(run('power', **options), run('power', **options))

    def test_rejects_coarse_grid(self):
        with self.assertRaisesMessage(CommandError, '--resolution'):
            run('power', a=1, b=2, c=0.8, p1_max=5, p2_max=5, resolution=1)


class SweepCommandTests(SimpleTestCase):
    def test_single_point_matches_rate_command(self):
        text = run('sweep', a=1, c=0.8, b_min=2, b_max=2, steps=1, p1_max=5, p2_max=5, schemes='proposed')
        schemes, power_control, rows = read_sweep_csv(io.StringIO(text))
        rate = json.loads(run('rate', a=1, b=2, c=0.8, p1=5, p2=5))['rate']
        self.assertEqual(schemes, [PROPOSED])
        self.assertFalse(power_control)
        self.assertAlmostEqual(rows[0].rates[PROPOSED], rate, delta=1e-11)

    def test_single_point_matches_power_command(self):
        text = run('sweep', a=1, c=0.8, b_min=2, b_max=2, steps=1, p1_max=5, p2_max=5,
                   power_control=True, schemes='proposed', resolution=41)
        row = read_sweep_csv(io.StringIO(text))[2][0]
        payload = json.loads(run('power', a=1, b=2, c=0.8, p1_max=5, p2_max=5, resolution=41))
        self.assertAlmostEqual(row.rates[PROPOSED], payload['rate'], delta=1e-11)
        self.assertAlmostEqual(row.powers[PROPOSED][0], payload['p1'], delta=1e-11)
        self.assertAlmostEqual(row.powers[PROPOSED][1], payload['p2'], delta=1e-11)

    def test_writes_file(self):
        options = {'a': 1, 'c': 0.8, 'b_min': 0, 'b_max': 4, 'steps': 5, 'p1_max': 5, 'p2_max': 5}
        expected = run('sweep', **options)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'sweep.csv')
            message = run('sweep', out=path, **options)
            self.assertIn('Wrote 5 rows', message)
            with open(path, encoding='utf-8', newline='') as handle:
                self.assertEqual(handle.read(), expected)

    def test_deterministic(self):
        options = {'a': 6, 'c': 0.8, 'b_min': 0, 'b_max': 30, 'steps': 7, 'p1_max': 5, 'p2_max': 5,
                   'power_control': True, 'resolution': 31}
        self.assertEqual(run('sweep', **options), run('sweep', **options))

    def test_rejects_bad_options(self):
        base = {'a': 1, 'c': 0.8, 'b_min': 0, 'b_max': 4, 'steps': 5, 'p1_max': 5, 'p2_max': 5}
        with self.assertRaisesMessage(CommandError, '--schemes'):
            run('sweep', schemes='proposed,relay', **base)
        with self.assertRaisesMessage(CommandError, 'arguments: --b-min must not exceed --b-max.'):
            run('sweep', **{**base, 'b_min': 5})

    def test_unwritable_output(self):
        options = {'a': 1, 'c': 0.8, 'b_min': 0, 'b_max': 0, 'steps': 1, 'p1_max': 5, 'p2_max': 5}
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaisesMessage(CommandError, 'Cannot write'):
                run('sweep', out=os.path.join(tmp, 'missing', 'sweep.csv'), **options)


class DmCommandTests(SimpleTestCase):
    def test_canonical_fixture(self):
        payload = json.loads(run('dm', yhat_size=2, resolution=2, refinements=1))
        self.assertAlmostEqual(payload['breakdown']['rs'], FIXTURE_RATE, places=6)
        self.assertEqual(payload['yhat_size'], 2)
        self.assertTrue(payload['lower_bound'])
        self.assertNotIn('eavesdropping', payload)

    def test_classification(self):
        payload = json.loads(run('dm', yhat_size=0, resolution=2, refinements=0, classify=True))
        self.assertEqual(payload['eavesdropping']['kind'], 'normal')

    def test_relay_fixture_compression_beats_the_helping_interferer(self):
        fixture = str(settings.RELAY_CHANNEL_FIXTURE)
        proposed = json.loads(run('dm', fixture=fixture, yhat_size=2, resolution=2, refinements=1, classify=True))
        interferer = json.loads(run('dm', fixture=fixture, yhat_size=0, resolution=2, refinements=1))
        self.assertAlmostEqual(proposed['breakdown']['rs'], RELAY_FIXTURE_RATE, places=9)
        self.assertAlmostEqual(interferer['breakdown']['rs'], 0.0, places=12)
        self.assertEqual(proposed['eavesdropping']['kind'], 'very_strong')

    def test_malformed_fixture(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'broken.json')
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write('{"sizes": ')
            with self.assertRaisesMessage(CommandError, 'invalid JSON'):
                run('dm', fixture=path)

    def test_missing_fixture(self):
        with self.assertRaisesMessage(CommandError, 'cannot read'):
            run('dm', fixture='/nonexistent/channel.json')

    def test_grid_too_large(self):
        with self.assertRaisesMessage(CommandError, 'cells'):
            run('dm', yhat_size=4, resolution=60)

    def test_deterministic_with_restarts(self):
        options = {'yhat_size': 0, 'resolution': 2, 'refinements': 1, 'restarts': 2, 'seed': 7}
        self.assertEqual(run('dm', **options), run('dm', **options))
