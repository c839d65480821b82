import math

import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from RelaySecrecy.channels.rates import r1_of_r2

from .models import CompressionConfig, GaussianScenario, PowerBudget
from .power import optimize_powers, search_powers
from .rates import (
    cap,
    closed_form_terms,
    compression_choice,
    covariance_terms,
    delta_star,
    gaussian_wt_hi,
    r1_gaussian,
    r1_uncompressed,
    r2_star,
    regime,
    rs_I,
    rs_I_grid,
    rs_II,
    rs_fixed,
    wt_hi_grid,
    wt_hi_terms,
)

FIELDS = ('i1', 'i2', 'i_joint', 'i_direct', 'i3')


def C(x):
    return 0.5 * math.log2(1 + x)


def random_scenario(rng, b=None):
    a, c = rng.uniform(0.0, 20.0, size=2)
    p1, p2 = rng.uniform(0.0, 10.0, size=2)
    return GaussianScenario(a, rng.uniform(0.0, 20.0) if b is None else b, c, p1, p2)


class CapacityTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(cap(0), 0.0)
        self.assertAlmostEqual(cap(15), 2.0, places=15)
        self.assertAlmostEqual(cap(10), 1.72957, places=5)

    def test_negative_argument(self):
        with self.assertRaises(ValidationError):
            cap(-0.1)

    def test_scenario_validation(self):
        with self.assertRaises(ValidationError):
            GaussianScenario(1.0, -2.0, 0.8, 5.0, 5.0)
        with self.assertRaises(ValidationError):
            CompressionConfig(delta_c=-1.0)
        with self.assertRaises(ValidationError):
            PowerBudget(5.0, -1.0)


class TermProvenanceTests(SimpleTestCase):
    def assertTermsClose(self, left, right, delta=1e-9):
        for name in FIELDS:
            np.testing.assert_allclose(getattr(left, name), getattr(right, name), rtol=0, atol=delta)

    def test_closed_forms_match_covariance_oracle(self):
        rng = np.random.default_rng(100)
        for _ in range(100):
            s = random_scenario(rng)
            delta = rng.uniform(0.01, 100.0)
            self.assertTermsClose(closed_form_terms(s, delta), covariance_terms(s, delta))
            self.assertTermsClose(closed_form_terms(s, None), covariance_terms(s, None))

    def test_wt_hi_terms_match_covariance_oracle(self):
        rng = np.random.default_rng(101)
        for _ in range(50):
            s = random_scenario(rng)
            self.assertTermsClose(wt_hi_terms(s), covariance_terms(s, None))


class CompressedRateTests(SimpleTestCase):
    def test_matches_rate_function_on_oracle_terms(self):
        rng = np.random.default_rng(102)
        for _ in range(100):
            s = random_scenario(rng)
            cfg = CompressionConfig(delta_c=rng.uniform(0.01, 100.0), r2=rng.uniform(0.0, 5.0))
            oracle = covariance_terms(s, cfg.delta_c)
            for t in (1, 2):
                self.assertAlmostEqual(r1_gaussian(s, cfg, t), r1_of_r2(oracle, t, cfg.r2), delta=1e-9)

    def test_coarse_compression_at_zero_relay_rate(self):
        s = GaussianScenario(1.0, 2.0, 0.8, 5.0, 5.0)
        cfg = CompressionConfig(delta_c=1e12, r2=0.0)
        expected = max(min(C(5 + 4 / (1 + 1e12)), C(15) + C(4 / (1 + 1e12))), C(5 / 11))
        self.assertAlmostEqual(r1_gaussian(s, cfg, 1), expected, delta=1e-12)
        self.assertAlmostEqual(r1_gaussian(s, cfg, 1), C(5), delta=1e-9)

    def test_deaf_relay(self):
        s = GaussianScenario(1.0, 2.0, 0.0, 5.0, 5.0)
        for r2 in (0.0, 0.5, 1.0, 3.0):
            expected = max(min(C(5), C(15) - r2), C(5 / 11))
            self.assertAlmostEqual(r1_gaussian(s, CompressionConfig(3.0, r2), 1), expected, places=12)

    def test_relay_forwards_its_observation_exactly(self):
        s = GaussianScenario(1.0, 2.0, 0.8, 5.0, 5.0)
        value = r1_gaussian(s, CompressionConfig(0.0, 1.0), 1)
        self.assertAlmostEqual(value, max(min(C(9), C(15) + C(4) - 1.0), C(5 / 11)), places=12)
        self.assertAlmostEqual(value, 1.660964, places=6)

    def test_zero_compression_noise_is_the_fine_compression_limit(self):
        rng = np.random.default_rng(106)
        for _ in range(50):
            s = random_scenario(rng)
            r2 = rng.uniform(0.0, 5.0)
            for t in (1, 2):
                exact = r1_gaussian(s, CompressionConfig(0.0, r2), t)
                fine = r1_gaussian(s, CompressionConfig(1e-12, r2), t)
                self.assertAlmostEqual(exact, fine, delta=1e-9)

    def test_zero_compression_noise_has_no_finite_terms(self):
        with self.assertRaises(ValidationError):
            closed_form_terms(GaussianScenario(1.0, 2.0, 0.8, 5.0, 5.0), 0.0)

    def test_receiver_index(self):
        with self.assertRaises(ValidationError):
            r1_gaussian(GaussianScenario(1.0, 2.0, 0.8, 5.0, 5.0), CompressionConfig(1.0, 0.0), 3)

    def test_disabled_compression_is_rejected(self):
        with self.assertRaises(ValidationError):
            r1_gaussian(GaussianScenario(1.0, 2.0, 0.8, 5.0, 5.0), CompressionConfig(None, 0.0), 1)

    def test_uncompressed_path_at_zero_relay_rate_is_direct_transmission(self):
        rng = np.random.default_rng(103)
        for _ in range(50):
            s = random_scenario(rng)
            value = max(r1_uncompressed(s, 1, 0.0) - r1_uncompressed(s, 2, 0.0), 0.0)
            self.assertEqual(value, rs_II(s))


class CompressionChoiceTests(SimpleTestCase):
    def test_plug_in(self):
        s = GaussianScenario(1.0, 2.0, 0.8, 5.0, 5.0)
        self.assertAlmostEqual(delta_star(s), 1.0, places=15)
        self.assertAlmostEqual(r2_star(s), max(C(5.0), C(5.0) + C(2.0)), places=12)

    def test_strong_relay_link(self):
        values = [delta_star(GaussianScenario(1.0, b, 0.8, 5.0, 5.0)) for b in (1e2, 1e4, 1e8)]
        self.assertTrue(values[0] > values[1] > values[2])
        self.assertLess(values[-1], 1e-6)

    def test_deaf_relay(self):
        s = GaussianScenario(1.0, 2.0, 0.0, 5.0, 5.0)
        delta = delta_star(s)
        self.assertAlmostEqual(r2_star(s), max(C(1 / delta), C(5.0)), places=12)

    def test_degenerate(self):
        for s in (GaussianScenario(1.0, 0.0, 0.8, 5.0, 5.0), GaussianScenario(1.0, 2.0, 0.8, 5.0, 0.0)):
            choice = compression_choice(s)
            self.assertTrue(choice.degenerate)
            self.assertIsNone(choice.delta_c)
            self.assertEqual(choice.r2, 0.0)
            self.assertTrue(choice.as_config().disabled)


class RelayedRateTests(SimpleTestCase):
    def test_regime_two(self):
        s = GaussianScenario(1.0, 2.0, 0.8, 5.0, 5.0)
        self.assertEqual(regime(s), 2)
        self.assertAlmostEqual(rs_I(s), C(15) - C(10), places=12)
        self.assertAlmostEqual(rs_I(s), 0.270430, places=6)

    def test_regime_one(self):
        s = GaussianScenario(1.0, 12.0, 0.8, 5.0, 5.0)
        self.assertEqual(regime(s), 1)
        self.assertAlmostEqual(rs_I(s), C(5 + 240 / 70) - C(5 / 6), places=12)

    def test_regime_three(self):
        s = GaussianScenario(1.0, 0.5, 0.8, 5.0, 5.0)
        self.assertEqual(regime(s), 3)
        self.assertAlmostEqual(rs_I(s), C(5 / 3.5) - C(5 / 6), places=12)

    def test_threshold_ties_take_the_higher_regime(self):
        self.assertEqual(regime(GaussianScenario(1.0, 5.0, 1.0, 2.0, 1.0)), 1)
        self.assertEqual(regime(GaussianScenario(1.0, 1.0, 1.0, 2.0, 1.0)), 2)

    def test_point_values_follow_compression_path(self):
        for b in (0.5, 2.0, 12.0):
            s = GaussianScenario(1.0, b, 0.8, 5.0, 5.0)
            path = r1_gaussian(s, compression_choice(s).as_config(), 1) - C(5 / 6)
            self.assertAlmostEqual(rs_I(s), path, delta=1e-9)

    def test_compression_path_reconstructs_every_regime(self):
        rng = np.random.default_rng(104)
        counts = {1: 0, 2: 0, 3: 0}
        for index in range(100):
            a, c = rng.uniform(0.0, 20.0, size=2)
            p1, p2 = rng.uniform(0.01, 10.0, size=2)
            upper = 1.0 + (1.0 + c) * p1
            b = (upper * rng.uniform(1.0, 2.0), rng.uniform(1.0, upper), rng.uniform(0.01, 1.0))[index % 3]
            s = GaussianScenario(a, b, c, p1, p2)
            counts[regime(s)] += 1
            path = r1_gaussian(s, compression_choice(s).as_config(), 1) - C(a * p1 / (1 + p2))
            self.assertAlmostEqual(rs_I(s), path, delta=1e-9)
        self.assertTrue(all(count >= 33 for count in counts.values()))

    def test_continuous_across_thresholds(self):
        rng = np.random.default_rng(105)
        for _ in range(50):
            s = random_scenario(rng)
            for threshold in (1.0, 1.0 + (1.0 + s.c) * s.p1):
                below = rs_I(GaussianScenario(s.a, threshold - 1e-10, s.c, s.p1, s.p2))
                at = rs_I(GaussianScenario(s.a, threshold, s.c, s.p1, s.p2))
                self.assertAlmostEqual(below, at, delta=1e-9)

    def test_grid_matches_scalar(self):
        rng = np.random.default_rng(106)
        s = random_scenario(rng)
        p1 = rng.uniform(0.0, 10.0, size=(4, 5))
        p2 = rng.uniform(0.0, 10.0, size=(4, 5))
        values = rs_I_grid(s.a, s.b, s.c, p1, p2)
        for i, j in np.ndindex(p1.shape):
            self.assertAlmostEqual(values[i, j], rs_I(s.with_powers(p1[i, j], p2[i, j])), places=14)


class DirectAndFixedRateTests(SimpleTestCase):
    def test_direct_transmission(self):
        self.assertEqual(rs_II(GaussianScenario(1.0, 2.0, 0.8, 5.0, 5.0)), 0.0)
        self.assertAlmostEqual(rs_II(GaussianScenario(0.0, 2.0, 0.8, 15.0, 5.0)), 2.0, places=15)
        self.assertEqual(rs_II(GaussianScenario(6.0, 2.0, 0.8, 3.0, 5.0)), 0.0)

    def test_fixed_power_rate(self):
        self.assertAlmostEqual(rs_fixed(GaussianScenario(1.0, 2.0, 0.8, 5.0, 5.0)), 0.270430, places=6)
        strong = GaussianScenario(6.0, 0.5, 0.8, 5.0, 5.0)
        self.assertLess(rs_I(strong), 0.0)
        self.assertEqual(rs_fixed(strong), 0.0)

    def test_silent_relay_reduces_to_direct_transmission(self):
        rng = np.random.default_rng(107)
        for _ in range(10):
            a, b, c = rng.uniform(0.0, 3.0, size=3)
            for p1 in np.linspace(0.0, 10.0, 50):
                s = GaussianScenario(a, b, c, p1, 0.0)
                self.assertAlmostEqual(rs_fixed(s), rs_II(s), delta=1e-12)


class HelpingInterfererTests(SimpleTestCase):
    def test_matches_relayed_rate_when_relay_link_is_weak(self):
        rng = np.random.default_rng(108)
        for _ in range(200):
            a, c = rng.uniform(0.0, 20.0), rng.uniform(0.1, 20.0)
            p1, p2 = rng.uniform(0.0, 10.0, size=2)
            s = GaussianScenario(a, rng.uniform(0.0, 1.0 + p1), c, p1, p2)
            self.assertAlmostEqual(gaussian_wt_hi(s), rs_fixed(s), delta=1e-9)

    def test_relayed_rate_is_strictly_better_when_relay_link_is_strong(self):
        rng = np.random.default_rng(109)
        found = 0
        for _ in range(20_000):
            a, c = rng.uniform(0.0, 20.0), rng.uniform(0.1, 20.0)
            p1, p2 = rng.uniform(0.0, 10.0, size=2)
            s = GaussianScenario(a, 1.0 + p1 + rng.uniform(0.0, 20.0), c, p1, p2)
            baseline = gaussian_wt_hi(s)
            if baseline <= 0.01:
                continue
            self.assertGreater(rs_fixed(s) - baseline, 0.0)
            found += 1
            if found == 200:
                break
        self.assertEqual(found, 200)

    def test_grid_matches_breakpoint_search(self):
        rng = np.random.default_rng(110)
        for _ in range(20):
            s = random_scenario(rng)
            self.assertAlmostEqual(float(wt_hi_grid(s.a, s.b, s.p1, s.p2)), gaussian_wt_hi(s), places=12)

    def test_never_negative(self):
        self.assertEqual(gaussian_wt_hi(GaussianScenario(6.0, 0.5, 0.8, 5.0, 5.0)), 0.0)


class PowerControlTests(SimpleTestCase):
    def test_dominated_channel_without_relay_power(self):
        solution = optimize_powers(1.5, 2.0, 0.8, PowerBudget(5.0, 0.0))
        self.assertEqual(solution.rate, 0.0)
        self.assertEqual((solution.p1, solution.p2), (0.0, 0.0))

    def test_deaf_eavesdropper_uses_full_source_power(self):
        budget = PowerBudget(5.0, 5.0)
        solution = optimize_powers(0.0, 2.0, 0.8, budget)
        coarse = optimize_powers(0.0, 2.0, 0.8, budget, refinements=0)
        self.assertEqual(solution.p1, 5.0)
        self.assertEqual(solution.p2, 0.0)
        self.assertAlmostEqual(solution.rate, C(5.0), places=12)
        self.assertEqual((coarse.p1, coarse.p2), (solution.p1, solution.p2))

    def test_power_control_rescues_a_strong_eavesdropper(self):
        budget = PowerBudget(5.0, 5.0)
        solution = optimize_powers(6.0, 20.0, 0.8, budget)
        self.assertGreater(solution.rate, 0.0)
        self.assertGreaterEqual(solution.rate, rs_fixed(GaussianScenario(6.0, 20.0, 0.8, 5.0, 5.0)) - 1e-12)
        self.assertTrue(solution.within(budget))

    def test_at_least_every_corner(self):
        rng = np.random.default_rng(111)
        for _ in range(20):
            a, b, c = rng.uniform(0.0, 20.0, size=3)
            budget = PowerBudget(*rng.uniform(0.0, 10.0, size=2))
            solution = optimize_powers(a, b, c, budget, resolution=41)
            for p1 in (0.0, budget.p1_max):
                for p2 in (0.0, budget.p2_max):
                    corner = max(rs_I(GaussianScenario(a, b, c, p1, p2)), 0.0)
                    self.assertGreaterEqual(solution.rate, corner - 1e-12)

    def test_refinement_never_loses_ground(self):
        rng = np.random.default_rng(112)
        for _ in range(20):
            a, b, c = rng.uniform(0.0, 20.0, size=3)
            budget = PowerBudget(5.0, 5.0)
            coarse = optimize_powers(a, b, c, budget, resolution=21, refinements=0)
            fine = optimize_powers(a, b, c, budget, resolution=21, refinements=2)
            self.assertGreaterEqual(fine.rate, coarse.rate)
            self.assertTrue(fine.within(budget))

    def test_deterministic(self):
        first = optimize_powers(6.0, 20.0, 0.8, (5.0, 5.0))
        second = optimize_powers(6.0, 20.0, 0.8, (5.0, 5.0))
        self.assertEqual(first, second)

    def test_refinement_steps(self):
        solution = search_powers(
            lambda p1, p2: 10.0 - (p1 - 1.234) ** 2 - (p2 - 0.5) ** 2,
            PowerBudget(5.0, 5.0),
            resolution=11,
            refinements=2,
        )
        self.assertLessEqual(abs(solution.p1 - 1.234), 0.0025)
        self.assertEqual(solution.p2, 0.5)
        np.testing.assert_allclose(solution.grid_step, (0.005, 0.005))

    def test_resolution_must_include_both_endpoints(self):
        with self.assertRaises(ValidationError):
            optimize_powers(1.0, 2.0, 0.8, PowerBudget(5.0, 5.0), resolution=1)

    def test_negative_gain(self):
        with self.assertRaises(ValidationError):
            optimize_powers(-1.0, 2.0, 0.8, PowerBudget(5.0, 5.0))
