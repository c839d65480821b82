import math

import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from .gaussian import SingularCovarianceError, build_gaussian_cov, gaussian_conditional_mi
from .measures import conditional_entropy, conditional_mi, entropy
from .models import X1, X2, Y1, Y2, YHAT, YR, GaussianCov, JointPmf


def cap(x):
    return 0.5 * math.log2(1.0 + x)


def brute_entropy(table):
    return -sum(p * math.log2(p) for p in np.ravel(table) if p > 0)


def random_pmf(rng, variables, sizes):
    probs = rng.dirichlet(np.ones(int(np.prod(sizes)))).reshape(sizes)
    return JointPmf(variables, probs)


class JointPmfTests(SimpleTestCase):
    def test_rejects_table_not_summing_to_one(self):
        with self.assertRaises(ValidationError):
            JointPmf((X1, Y1), [[0.5, 0.5], [0.5, 0.5]])

    def test_rejects_negative_entries(self):
        with self.assertRaises(ValidationError):
            JointPmf((X1,), [1.5, -0.5])

    def test_rejects_axis_count_mismatch(self):
        with self.assertRaises(ValidationError):
            JointPmf((X1, Y1), [0.5, 0.5])

    def test_table_is_read_only_copy(self):
        source = np.array([0.25, 0.75])
        pmf = JointPmf((X1,), source)
        source[0] = 0.5
        self.assertEqual(pmf.probs[0], 0.25)
        with self.assertRaises(ValueError):
            pmf.probs[0] = 0.5

    def test_marginal_is_a_valid_pmf(self):
        rng = np.random.default_rng(7)
        pmf = random_pmf(rng, (X1, X2, Y1), (2, 3, 2))
        marginal = pmf.marginal((Y1, X1))
        self.assertEqual(marginal.variables, (X1, Y1))
        self.assertAlmostEqual(float(marginal.probs.sum()), 1.0, places=12)

    def test_unknown_label(self):
        pmf = JointPmf((X1,), [0.5, 0.5])
        with self.assertRaises(ValidationError):
            pmf.entropy(Y2)

    def test_entropy_of_uniform_byte(self):
        pmf = JointPmf((X1, X2), np.full((16, 16), 1 / 256))
        self.assertAlmostEqual(entropy(pmf, (X1, X2)), 8.0, places=12)
        self.assertAlmostEqual(conditional_entropy(pmf, X1, X2), 4.0, places=12)


class ConditionalMiTests(SimpleTestCase):
    def test_independent_input_carries_nothing(self):
        probs = np.einsum('i,j->ij', [0.5, 0.5], [0.3, 0.7])
        pmf = JointPmf((X1, Y1), probs)
        self.assertEqual(conditional_mi(pmf, X1, Y1), 0.0)

    def test_noiseless_binary_link_carries_one_bit(self):
        pmf = JointPmf((X1, Y1), [[0.5, 0.0], [0.0, 0.5]])
        self.assertAlmostEqual(conditional_mi(pmf, X1, Y1), 1.0, places=12)

    def test_binary_symmetric_channel_matches_entropy_sums(self):
        p = 0.11
        bsc = np.array([[1 - p, p], [p, 1 - p]])
        probs = np.einsum('i,ij,k->ijk', [0.5, 0.5], bsc, [0.25, 0.75])
        pmf = JointPmf((X1, Y1, Y2), probs)
        pair = probs.sum(axis=2)
        expected = brute_entropy(pair.sum(axis=1)) + brute_entropy(pair.sum(axis=0)) - brute_entropy(pair)
        self.assertAlmostEqual(conditional_mi(pmf, X1, Y1), expected, places=12)
        self.assertAlmostEqual(expected, 1 + p * math.log2(p) + (1 - p) * math.log2(1 - p), places=12)

    def test_empty_set_gives_zero(self):
        pmf = JointPmf((X1, Y1), [[0.5, 0.0], [0.0, 0.5]])
        self.assertEqual(conditional_mi(pmf, (), Y1), 0.0)
        self.assertEqual(conditional_mi(pmf, X1, ()), 0.0)

    def test_overlapping_sets_are_rejected(self):
        pmf = JointPmf((X1, Y1), [[0.5, 0.0], [0.0, 0.5]])
        with self.assertRaises(ValidationError):
            conditional_mi(pmf, X1, (X1, Y1))
        with self.assertRaises(ValidationError):
            conditional_mi(pmf, X1, Y1, Y1)

    def test_chain_rule_and_nonnegativity(self):
        rng = np.random.default_rng(2024)
        for _ in range(50):
            pmf = random_pmf(rng, (X1, X2, Y1, Y2), (2, 3, 2, 2))
            whole = conditional_mi(pmf, X1, (X2, Y1), Y2)
            parts = conditional_mi(pmf, X1, X2, Y2) + conditional_mi(pmf, X1, Y1, (X2, Y2))
            self.assertAlmostEqual(whole, parts, delta=1e-10)
            for a, b, c in ((X1, Y1, ()), (X2, Y2, X1), ((X1, X2), Y1, Y2)):
                self.assertGreaterEqual(conditional_mi(pmf, a, b, c), 0.0)

    def test_data_processing_on_test_channel(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            px1 = rng.dirichlet(np.ones(2))
            px2 = rng.dirichlet(np.ones(2))
            relay = rng.dirichlet(np.ones(3), size=(2, 2))  # p(yr | x1, x2)
            test_channel = rng.dirichlet(np.ones(3), size=(3, 2))  # p(yhat | yr, x2)
            probs = np.einsum('i,j,ijk,kjl->ijkl', px1, px2, relay, test_channel)
            pmf = JointPmf((X1, X2, YR, YHAT), probs)
            self.assertLessEqual(
                conditional_mi(pmf, X1, YHAT, X2), conditional_mi(pmf, X1, YR, X2) + 1e-12
            )


class GaussianOracleTests(SimpleTestCase):
    def test_noise_only_covariance(self):
        cov = build_gaussian_cov(1.0, 2.0, 0.8, 0.0, 0.0, 1.0)
        for name in (X1, X2):
            self.assertEqual(cov[name, name], 0.0)
        for name in (Y1, Y2, YR):
            self.assertEqual(cov[name, name], 1.0)

    def test_covariance_algebra(self):
        cov = build_gaussian_cov(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
        self.assertAlmostEqual(cov[YHAT, YHAT], 3.0, places=12)
        self.assertAlmostEqual(cov[X1, Y1], 1.0, places=12)
        self.assertAlmostEqual(cov[X1, X1], 1.0, places=12)

    def test_disabled_compression_drops_yhat(self):
        cov = build_gaussian_cov(1.0, 2.0, 0.8, 5.0, 5.0, None)
        self.assertNotIn(YHAT, cov.variables)
        self.assertEqual(cov.matrix.shape, (5, 5))

    def test_negative_inputs_are_rejected(self):
        with self.assertRaises(ValidationError):
            build_gaussian_cov(-1.0, 1.0, 1.0, 1.0, 1.0)
        with self.assertRaises(ValidationError):
            build_gaussian_cov(1.0, 1.0, 1.0, -1.0, 1.0)
        with self.assertRaises(ValidationError):
            build_gaussian_cov(1.0, 1.0, 1.0, 1.0, 1.0, -0.5)

    def test_awgn_capacity(self):
        cov = GaussianCov((X1, Y1), [[5.0, 5.0], [5.0, 6.0]])
        self.assertAlmostEqual(gaussian_conditional_mi(cov, X1, Y1), cap(5.0), delta=1e-9)

    def test_conditioning_on_relay_input_removes_its_interference(self):
        for b in (0.0, 0.3, 7.0):
            cov = build_gaussian_cov(1.0, b, 0.8, 5.0, 5.0)
            self.assertAlmostEqual(gaussian_conditional_mi(cov, X1, Y1, X2), cap(5.0), delta=1e-9)
        self.assertAlmostEqual(cap(5.0), 1.2925, places=4)

    def test_independent_inputs(self):
        cov = build_gaussian_cov(1.0, 2.0, 0.8, 5.0, 5.0, 1.0)
        self.assertAlmostEqual(gaussian_conditional_mi(cov, X1, X2), 0.0, delta=1e-9)
        self.assertAlmostEqual(gaussian_conditional_mi(cov, YHAT, Y2, (X1, X2)), 0.0, delta=1e-9)

    def test_deaf_relay(self):
        cov = build_gaussian_cov(1.0, 2.0, 0.0, 5.0, 5.0, 1.0)
        self.assertAlmostEqual(gaussian_conditional_mi(cov, X1, YHAT), 0.0, delta=1e-9)

    def test_overlapping_sets_are_rejected(self):
        cov = build_gaussian_cov(1.0, 2.0, 0.8, 5.0, 5.0, 1.0)
        with self.assertRaises(ValidationError):
            gaussian_conditional_mi(cov, X1, (X1, Y1))

    def test_singular_block_names_its_labels(self):
        cov = GaussianCov((X1, X2), [[1.0, 1.0], [1.0, 1.0 - 1e-10]])
        with self.assertRaises(SingularCovarianceError) as ctx:
            gaussian_conditional_mi(cov, X1, X2)
        self.assertEqual(ctx.exception.labels, frozenset({X1, X2}))

    def test_closed_form_terms_match_log_determinants(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            a, b, c = rng.uniform(0.0, 20.0, size=3)
            p1, p2 = rng.uniform(0.0, 10.0, size=2)
            delta = rng.uniform(0.01, 100.0)
            cov = build_gaussian_cov(a, b, c, p1, p2, delta)
            gain = c * p1 / (1.0 + delta)
            expected = [
                ((X1, (YHAT, Y1), X2), cap(p1 + gain)),
                (((X1, X2), Y1, ()), cap(p1 + b * p2)),
                ((YHAT, (X1, Y1), X2), cap(gain)),
                ((X1, Y1, ()), cap(p1 / (1.0 + b * p2))),
                ((X1, (YHAT, Y2), X2), cap(a * p1 + gain)),
                (((X1, X2), Y2, ()), cap(a * p1 + p2)),
                ((X1, Y2, ()), cap(a * p1 / (1.0 + p2))),
                ((YHAT, YR, X2), cap((1.0 + c * p1) / delta)),
                ((X2, Y2, X1), cap(p2)),
            ]
            for (left, right, given), value in expected:
                self.assertAlmostEqual(gaussian_conditional_mi(cov, left, right, given), value, delta=1e-9)

    def test_data_processing_gaussian(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            a, b, c = rng.uniform(0.0, 20.0, size=3)
            p1, p2 = rng.uniform(0.0, 10.0, size=2)
            cov = build_gaussian_cov(a, b, c, p1, p2, rng.uniform(0.01, 100.0))
            self.assertLessEqual(
                gaussian_conditional_mi(cov, X1, YHAT, X2),
                gaussian_conditional_mi(cov, X1, YR, X2) + 1e-12,
            )
