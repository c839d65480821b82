import json
import math
import os
import tempfile

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from .bounds import lemma1_bound, lemma1_log2_bound, lemma1_scaled_bound
from .fixtures import channel_from_dict, channel_to_dict, load_channel
from .models import (
    EXTREMELY_STRONG,
    JOINT,
    NORMAL,
    SEPARATE,
    VERY_STRONG,
    DmChannel,
    InputPolicy,
    Lemma1Input,
    RateTerms,
    SearchConfig,
)
from .rates import (
    breakpoints,
    compute_terms,
    decoding_mode,
    optimize_r2,
    r1_of_r2,
    secrecy_objective,
    secrecy_rate,
    very_strong_lower_bound,
    very_strong_relay_rate,
    wt_hi_rate,
)
from .search import (
    PolicyGridTooLarge,
    classify_eavesdropping,
    maximize_over_policies,
    simplex_grid,
    simplex_grid_size,
)

UNIFORM = [0.5, 0.5]
BSC_01 = np.array([[0.9, 0.1], [0.1, 0.9]])


def h2(p):
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def brute_mi(joint):
    """I(A;B) from a 2-D table by explicit sums."""
    pa, pb = joint.sum(axis=1), joint.sum(axis=0)
    total = 0.0
    for i in range(joint.shape[0]):
        for j in range(joint.shape[1]):
            if joint[i, j] > 0:
                total += joint[i, j] * math.log2(joint[i, j] / (pa[i] * pb[j]))
    return total


def product_channel(relay, dest, eve):
    """Channel whose outputs are independent given (x1, x2); each factor indexed [x1][x2][y]."""
    return DmChannel(np.einsum('ijk,ijm,ijn->ijkmn', relay, dest, eve))


def from_x1(law, x2_size=2):
    """Lift p(y | x1) to p(y | x1, x2) for an X2 that does not matter."""
    return np.repeat(np.asarray(law, dtype=float)[:, None, :], x2_size, axis=1)


def random_channel(rng, sizes=(2, 2, 2, 2, 2)):
    x1, x2, yr, y1, y2 = sizes
    table = rng.dirichlet(np.ones(yr * y1 * y2), size=(x1, x2)).reshape(sizes)
    return DmChannel(table)


def random_policy(rng, channel, yhat_size):
    sizes = channel.sizes
    test_channel = None
    if yhat_size:
        test_channel = rng.dirichlet(np.ones(yhat_size), size=(sizes['yr'], sizes['x2']))
    return InputPolicy(rng.dirichlet(np.ones(sizes['x1'])), rng.dirichlet(np.ones(sizes['x2'])), test_channel)


def fixture_channel():
    return load_channel(settings.CANONICAL_CHANNEL_FIXTURE)


FIXTURE_RATE = 1 - h2(0.1)  # 0.531004406...


class ComputeTermsTests(SimpleTestCase):
    def test_perfect_quantization_of_noiseless_relay(self):
        px1 = [0.3, 0.7]
        identity = np.repeat(np.eye(2)[:, None, :], 2, axis=1)
        terms = compute_terms(fixture_channel(), InputPolicy(px1, UNIFORM, identity))
        self.assertAlmostEqual(terms.i1, h2(0.3), places=12)

    def test_constant_quantizer_disables_compression(self):
        rng = np.random.default_rng(3)
        channel = random_channel(rng)
        px1, px2 = rng.dirichlet(np.ones(2)), rng.dirichlet(np.ones(2))
        constant = compute_terms(channel, InputPolicy(px1, px2, np.ones((2, 2, 1))))
        disabled = compute_terms(channel, InputPolicy(px1, px2, None))
        self.assertEqual(constant.i1, 0.0)
        for k in range(2):
            self.assertAlmostEqual(constant.i_joint[k], disabled.i_joint[k], places=12)
            self.assertAlmostEqual(constant.i2[k], disabled.i2[k], places=12)
        self.assertAlmostEqual(constant.i3, disabled.i3, places=12)

    def test_terms_match_entropy_sums(self):
        rng = np.random.default_rng(4)
        channel = random_channel(rng)
        px1, px2 = np.array([0.4, 0.6]), np.array([0.25, 0.75])
        terms = compute_terms(channel, InputPolicy(px1, px2, None))
        joint = np.einsum('i,j,ijkmn->ijkmn', px1, px2, channel.transition)
        x1_y1 = joint.sum(axis=(1, 2, 4))
        x1_y2 = joint.sum(axis=(1, 2, 3))
        self.assertAlmostEqual(terms.i_direct[0], brute_mi(x1_y1), places=12)
        self.assertAlmostEqual(terms.i_direct[1], brute_mi(x1_y2), places=12)
        # I(X1;Y1|X2) = sum over x2 of p(x2) I(X1;Y1 | X2=x2)
        x1_x2_y1 = joint.sum(axis=(2, 4))
        conditional = sum(px2[j] * brute_mi(x1_x2_y1[:, j, :] / px2[j]) for j in range(2))
        self.assertAlmostEqual(terms.i_joint[0], conditional, places=12)
        x1x2_y1 = joint.sum(axis=(2, 4)).reshape(4, 2)
        self.assertAlmostEqual(terms.i2[0], brute_mi(x1x2_y1), places=12)

    def test_size_mismatch(self):
        channel = fixture_channel()
        with self.assertRaises(ValidationError):
            compute_terms(channel, InputPolicy([0.2, 0.3, 0.5], UNIFORM, None))
        with self.assertRaises(ValidationError):
            compute_terms(channel, InputPolicy(UNIFORM, UNIFORM, np.ones((3, 2, 1))))

    def test_eavesdropper_floor_identity(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            channel = random_channel(rng)
            terms = compute_terms(channel, random_policy(rng, channel, 3))
            self.assertAlmostEqual(terms.i2[1] - terms.i3, terms.i_direct[1], delta=1e-10)


class RelayRateTests(SimpleTestCase):
    terms = RateTerms(i1=0.1, i2=(1.5, 0.9), i_joint=(1.0, 0.8), i_direct=(0.3, 0.3), i3=0.6)

    def test_hand_evaluation(self):
        self.assertAlmostEqual(r1_of_r2(self.terms, 1, 0.8), 0.7, places=12)

    def test_joint_arm_at_zero_relay_rate(self):
        self.assertEqual(r1_of_r2(self.terms, 1, 0.0), 1.0)
        self.assertEqual(decoding_mode(self.terms, 1, 0.0), JOINT)

    def test_separate_decoding_floor(self):
        self.assertAlmostEqual(r1_of_r2(self.terms, 1, 1.2), 0.3, places=12)
        self.assertEqual(r1_of_r2(self.terms, 2, 5.0), 0.3)
        self.assertEqual(decoding_mode(self.terms, 2, 5.0), SEPARATE)

    def test_destination_rate_is_nonincreasing(self):
        values = [r1_of_r2(self.terms, 1, r2) for r2 in np.linspace(0.0, 3.0, 301)]
        self.assertTrue(all(later <= earlier for earlier, later in zip(values, values[1:])))

    def test_rejects_bad_arguments(self):
        with self.assertRaises(ValidationError):
            r1_of_r2(self.terms, 1, -0.1)
        with self.assertRaises(ValidationError):
            r1_of_r2(self.terms, 3, 0.1)

    def test_invalid_terms(self):
        with self.assertRaises(ValidationError):
            RateTerms(i1=-0.1, i2=(1.0, 1.0), i_joint=(0.5, 0.5), i_direct=(0.2, 0.2), i3=0.0)
        with self.assertRaises(ValidationError):
            RateTerms(i1=0.0, i2=(0.1, 1.0), i_joint=(0.5, 0.5), i_direct=(0.2, 0.2), i3=0.0)


def random_terms(rng):
    direct = rng.uniform(0.0, 0.2, size=2)
    return RateTerms(
        i1=rng.uniform(0.0, 0.2),
        i2=tuple(direct + rng.uniform(0.0, 0.25, size=2)),
        i_joint=tuple(rng.uniform(0.0, 0.45, size=2)),
        i_direct=tuple(direct),
        i3=rng.uniform(0.0, 0.45),
    )


def grid_objective(terms, grid):
    dest = np.maximum(np.minimum(terms.i_joint[0], terms.i2[0] - grid), terms.i_direct[0])
    eve = np.maximum(np.minimum(terms.i_joint[1], terms.i2[1] - grid), terms.i_direct[1])
    return dest - eve


class OptimizeRelayRateTests(SimpleTestCase):
    def test_no_eavesdropper(self):
        terms = RateTerms(i1=0.2, i2=(1.5, 0.0), i_joint=(1.0, 0.0), i_direct=(0.3, 0.0), i3=0.0)
        result = optimize_r2(terms)
        self.assertEqual(result.r1_eve, 0.0)
        self.assertEqual(result.rs, r1_of_r2(terms, 1, terms.i1))

    def test_relay_rate_at_i3_in_very_strong_case(self):
        terms = RateTerms(i1=0.125, i2=(1.375, 0.875), i_joint=(0.875, 0.75), i_direct=(0.25, 0.375), i3=0.5)
        result = optimize_r2(terms)
        self.assertEqual(result.r2, 0.5)
        self.assertEqual(result.rs, 1.375 - 0.875)
        self.assertEqual(result.decoding_mode, (JOINT, SEPARATE))
        self.assertAlmostEqual(very_strong_lower_bound(terms), result.rs, places=12)

    def test_ties_go_to_smallest_relay_rate(self):
        terms = RateTerms(i1=0.1, i2=(1.4, 0.9), i_joint=(1.3, 0.8), i_direct=(0.2, 0.3), i3=0.6)
        result = optimize_r2(terms)
        self.assertAlmostEqual(result.rs, 0.5, places=12)
        self.assertAlmostEqual(result.r2, 0.1, places=12)

    def test_breakpoints_respect_relay_floor(self):
        terms = RateTerms(i1=0.5, i2=(0.7, 0.6), i_joint=(0.1, 0.2), i_direct=(0.05, 0.1), i3=0.2)
        points = breakpoints(terms)
        self.assertEqual(points[0], 0.5)
        self.assertTrue(all(r2 >= 0.5 for r2 in points))

    def test_breakpoints_beat_dense_grid(self):
        rng = np.random.default_rng(20)
        for _ in range(1000):
            terms = random_terms(rng)
            result = optimize_r2(terms)
            grid = np.linspace(terms.i1, terms.i1 + 2 * max(terms.i2), 10_000)
            best_on_grid = max(float(np.max(grid_objective(terms, grid))), 0.0)
            self.assertGreaterEqual(result.rs, best_on_grid - 1e-9)
            self.assertLessEqual(result.rs - best_on_grid, 1e-4)
            self.assertGreaterEqual(result.r2, terms.i1)
            self.assertAlmostEqual(result.rs, max(result.r1_dest - result.r1_eve, 0.0), places=12)
            self.assertLessEqual(very_strong_lower_bound(terms), result.rs + 1e-12)

    def test_objective_matches_receiver_rates(self):
        terms = RelayRateTests.terms
        self.assertAlmostEqual(
            secrecy_objective(terms, 0.4), r1_of_r2(terms, 1, 0.4) - r1_of_r2(terms, 2, 0.4), places=15
        )


class VeryStrongBoundTests(SimpleTestCase):
    def test_silent_eavesdropper(self):
        terms = RateTerms(i1=0.2, i2=(1.5, 0.0), i_joint=(1.0, 0.0), i_direct=(0.3, 0.0), i3=0.0)
        self.assertAlmostEqual(very_strong_lower_bound(terms), min(1.0, 1.5 - 0.0, 1.5 - 0.2), places=12)

    def test_matches_substitution_when_eavesdropper_sees_more_directly(self):
        rng = np.random.default_rng(31)
        checked = 0
        while checked < 30:
            channel = random_channel(rng)
            terms = compute_terms(channel, random_policy(rng, channel, 2))
            r2 = very_strong_relay_rate(terms)
            substituted = max(r1_of_r2(terms, 1, r2) - r1_of_r2(terms, 2, r2), 0.0)
            self.assertLessEqual(very_strong_lower_bound(terms), substituted + 1e-10)
            if terms.i_direct[0] <= terms.i_direct[1]:
                self.assertAlmostEqual(very_strong_lower_bound(terms), substituted, delta=1e-10)
                checked += 1


class SecrecyRateTests(SimpleTestCase):
    def test_identical_receivers_give_zero(self):
        rng = np.random.default_rng(12)
        relay_dest = rng.dirichlet(np.ones(4), size=(2, 2)).reshape(2, 2, 2, 2)  # p(yr, y1 | x1, x2)
        table = np.einsum('ijkm,mn->ijkmn', relay_dest, np.eye(2))
        channel = DmChannel(table)
        for _ in range(10):
            self.assertEqual(secrecy_rate(channel, random_policy(rng, channel, 3)).rs, 0.0)

    def test_disabled_test_channel_is_wt_hi(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            channel = random_channel(rng, sizes=tuple(rng.integers(1, 4, size=5)))
            policy = random_policy(rng, channel, 0)
            self.assertEqual(
                secrecy_rate(channel, policy).as_dict(),
                wt_hi_rate(channel, policy.px1, policy.px2).as_dict(),
            )

    def test_wt_hi_without_helper(self):
        rng = np.random.default_rng(14)
        channel = random_channel(rng, sizes=(3, 1, 2, 2, 2))
        px1 = np.array([0.2, 0.5, 0.3])
        joint = np.einsum('i,ijkmn->ikmn', px1, channel.transition)
        expected = max(brute_mi(joint.sum(axis=(1, 3))) - brute_mi(joint.sum(axis=(1, 2))), 0.0)
        self.assertAlmostEqual(wt_hi_rate(channel, px1, [1.0]).rs, expected, places=12)

    def test_fixture_at_uniform_inputs(self):
        result = secrecy_rate(fixture_channel(), InputPolicy(UNIFORM, UNIFORM, None))
        self.assertAlmostEqual(result.rs, FIXTURE_RATE, places=9)
        self.assertAlmostEqual(result.r1_eve, 0.0, places=12)


class PolicySearchTests(SimpleTestCase):
    search = SearchConfig(yhat_size=2, resolution=2, refinements=1)

    def test_simplex_grid(self):
        grid = simplex_grid(3, 2)
        self.assertEqual(len(grid), simplex_grid_size(3, 2))
        self.assertEqual(len(grid), 6)
        for point in grid:
            self.assertAlmostEqual(float(point.sum()), 1.0, places=12)
        self.assertEqual([list(p) for p in simplex_grid(1, 4)], [[1.0]])

    def test_deaf_destination(self):
        noise = np.full((2, 2, 2), 0.5)
        channel = product_channel(from_x1(np.eye(2)), noise, from_x1(BSC_01))
        _, best = maximize_over_policies(channel, self.search)
        self.assertAlmostEqual(best.rs, 0.0, places=12)

    def test_fixture_reaches_main_channel_capacity(self):
        policy, best = maximize_over_policies(fixture_channel(), self.search)
        self.assertAlmostEqual(best.rs, FIXTURE_RATE, places=9)
        np.testing.assert_allclose(policy.px1, UNIFORM)

    def test_wt_hi_class_search_is_dominated(self):
        channel = random_channel(np.random.default_rng(15))
        _, proposed = maximize_over_policies(channel, SearchConfig(yhat_size=2, resolution=2, refinements=0))
        _, baseline = maximize_over_policies(channel, SearchConfig(yhat_size=0, resolution=2, refinements=0))
        self.assertGreaterEqual(proposed.rs, baseline.rs - 1e-12)

    def test_seeded_search_is_deterministic(self):
        channel = random_channel(np.random.default_rng(16))
        search = SearchConfig(yhat_size=2, resolution=2, refinements=1, restarts=2, seed=9)
        first = maximize_over_policies(channel, search)
        second = maximize_over_policies(channel, search)
        self.assertEqual(first[0].as_dict(), second[0].as_dict())
        self.assertEqual(first[1].as_dict(), second[1].as_dict())

    def test_budget_is_checked_first(self):
        with self.assertRaises(PolicyGridTooLarge):
            maximize_over_policies(fixture_channel(), SearchConfig(resolution=4, cell_budget=10))

    def test_default_quantizer_size(self):
        self.assertEqual(SearchConfig().resolve_yhat_size(fixture_channel()), 3)
        with self.assertRaises(ValidationError):
            SearchConfig(resolution=0)


class ClassifyEavesdroppingTests(SimpleTestCase):
    search = SearchConfig(yhat_size=2, resolution=2)

    def test_copied_output_with_useless_relay(self):
        noise = np.full((2, 2, 2), 0.5)
        relay_dest = np.einsum('ijk,ijm->ijkm', noise, from_x1(BSC_01))
        channel = DmChannel(np.einsum('ijkm,mn->ijkmn', relay_dest, np.eye(2)))
        report = classify_eavesdropping(channel, self.search)
        self.assertTrue(report.very_strong)
        self.assertLessEqual(abs(report.very_strong_margin), 1e-12)
        self.assertEqual(report.kind, EXTREMELY_STRONG)
        self.assertIsNone(report.very_strong_violation)
        self.assertTrue(report.approximate)

    def test_noisy_eavesdropper_is_normal(self):
        noise = np.full((2, 2, 2), 0.5)
        channel = product_channel(noise, from_x1(np.eye(2)), noise)
        report = classify_eavesdropping(channel, self.search)
        self.assertEqual(report.kind, NORMAL)
        self.assertFalse(report.very_strong)
        self.assertIsNotNone(report.very_strong_violation)
        self.assertLess(report.very_strong_margin, 0.0)

    def test_fixture(self):
        report = classify_eavesdropping(fixture_channel(), self.search)
        self.assertEqual(report.kind, NORMAL)
        self.assertEqual(report.points_checked, 9 + 3 * 3 * 3 ** 4)
        self.assertAlmostEqual(report.very_strong_margin, -FIXTURE_RATE, places=9)
        self.assertEqual(report.as_dict()['kind'], NORMAL)


class DecodingErrorBoundTests(SimpleTestCase):
    def test_direct_evaluation(self):
        inp = Lemma1Input(n=8, r2=1.0, i1=0.0, eps_prime=0.5, delta_eps=0.0)
        expected = 2 ** -8 * (2 / 0.5 + math.exp(-(0.5 * 2 ** (8 - 3) - 8 * math.log(2))))
        self.assertAlmostEqual(lemma1_bound(inp), expected, delta=1e-15)
        self.assertAlmostEqual(lemma1_log2_bound(inp), math.log2(expected), places=12)

    def test_scaled_bound_limit(self):
        inp = Lemma1Input(n=10_000, r2=0.7, i1=0.2, eps_prime=0.1, delta_eps=0.01)
        limit = 2 / (1 - 0.1)
        self.assertLessEqual(abs(lemma1_scaled_bound(inp) - limit) / limit, 1e-6)

    def test_decreasing_in_block_length(self):
        values = [
            lemma1_log2_bound(Lemma1Input(n=n, r2=0.7, i1=0.2, eps_prime=0.1, delta_eps=0.01))
            for n in range(200, 10_001, 50)
        ]
        self.assertTrue(all(later < earlier for earlier, later in zip(values, values[1:])))

    def test_plain_bound_stays_positive_for_long_blocks(self):
        inp = Lemma1Input(n=10_000, r2=0.7, i1=0.2, eps_prime=0.1, delta_eps=0.01)
        self.assertGreater(lemma1_bound(inp), 0.0)
        self.assertEqual(lemma1_bound(inp), np.finfo(float).tiny)
        self.assertLess(lemma1_log2_bound(inp), math.log2(np.finfo(float).tiny))

    def test_plain_bound_never_increases_with_block_length(self):
        values = [
            lemma1_bound(Lemma1Input(n=n, r2=0.7, i1=0.2, eps_prime=0.1, delta_eps=0.01))
            for n in range(200, 10_001, 50)
        ]
        self.assertTrue(all(0.0 < later <= earlier for earlier, later in zip(values, values[1:])))

    def test_accepts_plain_mapping(self):
        self.assertEqual(
            lemma1_bound({'n': 8, 'r2': 1.0, 'i1': 0.0, 'eps_prime': 0.5}),
            lemma1_bound(Lemma1Input(n=8, r2=1.0, i1=0.0, eps_prime=0.5)),
        )

    def test_invalid_inputs(self):
        for kwargs in (
            {'n': 0, 'r2': 1.0, 'i1': 0.0, 'eps_prime': 0.5},
            {'n': 8, 'r2': 1.0, 'i1': 0.0, 'eps_prime': 1.0},
            {'n': 8, 'r2': -1.0, 'i1': 0.0, 'eps_prime': 0.5},
            {'n': 8, 'r2': 1.0, 'i1': 0.0, 'eps_prime': 0.5, 'delta_eps': -0.1},
        ):
            with self.assertRaises(ValidationError):
                Lemma1Input(**kwargs)


class CompressingRelayFixtureTests(SimpleTestCase):
    """Yr = X1, Y1 = X2, Y2 = X1 through BSC(0.1): only the relay links X1 to the destination."""

    search = SearchConfig(yhat_size=2, resolution=2, refinements=1)

    def setUp(self):
        self.channel = load_channel(settings.RELAY_CHANNEL_FIXTURE)

    def test_forwarding_the_relay_observation(self):
        identity = np.repeat(np.eye(2)[:, None, :], 2, axis=1)
        terms = compute_terms(self.channel, InputPolicy(UNIFORM, UNIFORM, identity))
        self.assertAlmostEqual(terms.i1, 1.0, places=12)
        self.assertAlmostEqual(terms.i_joint[0], 1.0, places=12)
        self.assertAlmostEqual(terms.i_direct[0], 0.0, places=12)
        self.assertAlmostEqual(terms.i_direct[1], 1 - h2(0.1), places=12)
        breakdown = optimize_r2(terms)
        self.assertAlmostEqual(breakdown.r2, 1.0, places=9)
        self.assertAlmostEqual(breakdown.rs, h2(0.1), places=9)
        self.assertEqual(breakdown.decoding_mode[0], JOINT)

    def test_compression_beats_the_helping_interferer(self):
        _, proposed = maximize_over_policies(self.channel, self.search)
        _, interferer = maximize_over_policies(self.channel, SearchConfig(yhat_size=0, resolution=2, refinements=1))
        self.assertAlmostEqual(proposed.rs, h2(0.1), places=9)
        self.assertAlmostEqual(interferer.rs, 0.0, places=12)

    def test_very_strong_but_not_extremely_strong(self):
        report = classify_eavesdropping(self.channel, SearchConfig(yhat_size=2, resolution=2, refinements=0))
        self.assertEqual(report.kind, VERY_STRONG)
        self.assertTrue(report.very_strong)
        self.assertFalse(report.extremely_strong)
        self.assertIsNone(report.very_strong_violation)
        self.assertIsNotNone(report.extremely_strong_violation)
        self.assertLess(report.extremely_strong_margin, -0.4)

    def test_transition_is_read_only(self):
        with self.assertRaises(ValueError):
            self.channel.transition[0, 0, 0, 0, 0] = 0.0


class ChannelFixtureTests(SimpleTestCase):
    def document(self):
        with open(settings.CANONICAL_CHANNEL_FIXTURE, encoding='utf-8') as handle:
            return json.load(handle)

    def test_canonical_fixture(self):
        channel = fixture_channel()
        self.assertEqual(channel.sizes, {'x1': 2, 'x2': 2, 'yr': 2, 'y1': 2, 'y2': 2})
        self.assertEqual(channel_from_dict(channel_to_dict(channel)).transition.tolist(),
                         channel.transition.tolist())

    def test_bad_size_names_field(self):
        data = self.document()
        data['sizes']['yr'] = 0
        with self.assertRaisesMessage(ValidationError, 'sizes.yr'):
            channel_from_dict(data)

    def test_slice_not_summing_to_one_names_field(self):
        data = self.document()
        data['transition'][1][0][1][1][1] = 0.9
        with self.assertRaisesMessage(ValidationError, 'transition[1][0]'):
            channel_from_dict(data)

    def test_wrong_shape_names_field(self):
        data = self.document()
        data['transition'][0][1] = data['transition'][0][1][:1]
        with self.assertRaisesMessage(ValidationError, 'transition[0][1]'):
            channel_from_dict(data)

    def test_non_numeric_entry_names_field(self):
        data = self.document()
        data['transition'][0][0][0][0][0] = 'half'
        with self.assertRaisesMessage(ValidationError, 'transition[0][0][0][0][0]'):
            channel_from_dict(data)

    def test_unreadable_files(self):
        with self.assertRaises(ValidationError):
            load_channel('/nonexistent/channel.json')
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, 'broken.json')
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write('{"sizes": ')
            with self.assertRaisesMessage(ValidationError, 'invalid JSON'):
                load_channel(path)
