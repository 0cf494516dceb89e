#!/usr/bin/env python
###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Weighted Bonferroni, Holm, Šidák, BH/BY and the Storey estimator
"""

import unittest

import numpy as np

from ihw import hypotheses
from ihw import procedures
from ihw.core import errors
from ihw.core import _core
from ihw.procedures import weighted


def single_fold(m):
    return hypotheses.FoldPartition(np.ones(m, dtype=int), 1, hypotheses.USER_SUPPLIED)


def textbook_bh(p, alpha):
    """ Step-up on the sorted p-values, rejecting the k* smallest """
    m = len(p)
    order = np.argsort(p)
    k_star = 0
    for k in range(1, m + 1):
        if p[order[k - 1]] <= alpha * k / m:
            k_star = k
    rejected = np.zeros(m, dtype=bool)
    rejected[order[:k_star]] = True
    return rejected


def textbook_holm(p, alpha):
    m = len(p)
    rejected = np.zeros(m, dtype=bool)
    for k, i in enumerate(np.argsort(p)):
        if p[i] > alpha / (m - k):
            break
        rejected[i] = True
    return rejected


class TestBonferroni(unittest.TestCase):

    def test_uniform_weights(self):
        outcome = weighted.weighted_bonferroni([0.01, 0.02, 0.03, 0.2], np.ones(4), 0.05)
        self.assertEqual(outcome.rejected.tolist(), [True, False, False, False])
        np.testing.assert_allclose(outcome.thresholds, 0.0125)
        self.assertEqual(outcome.procedure_id, 'bonferroni')

    def test_zero_weight(self):
        """A zero weight never rejects a positive p-value"""
        outcome = weighted.weighted_bonferroni([0.04, 0.001], [2.0, 0.0], 0.05)
        self.assertEqual(outcome.rejected.tolist(), [True, False])
        np.testing.assert_allclose(outcome.thresholds, [0.05, 0.0])

    def test_zero_pvalue_with_zero_weight(self):
        outcome = weighted.weighted_bonferroni([0.0299, 0.031, 0.0], [1.5, 1.5, 0.0], 0.06)
        self.assertEqual(outcome.rejected.tolist(), [True, False, True])
        np.testing.assert_allclose(outcome.thresholds, [0.03, 0.03, 0.0])

    def test_invalid_level(self):
        with self.assertRaises(errors.InvalidLevel):
            weighted.weighted_bonferroni([0.1], [1.0], 1.5)

    def test_length_mismatch(self):
        with self.assertRaises(errors.LengthMismatch):
            weighted.weighted_bonferroni([0.1, 0.2], [1.0], 0.05)

    def test_negative_weight(self):
        with self.assertRaises(errors.NegativeWeight):
            weighted.weighted_bonferroni([0.1, 0.2], [3.0, -1.0], 0.05)

    def test_k_one_is_bonferroni(self):
        p, w = [0.01, 0.02, 0.03, 0.2], [1.0, 2.0, 0.5, 0.5]
        plain = weighted.weighted_bonferroni(p, w, 0.05)
        k_one = weighted.k_bonferroni(p, w, 0.05, k=1)
        self.assertEqual(plain.rejected.tolist(), k_one.rejected.tolist())
        np.testing.assert_array_equal(plain.thresholds, k_one.thresholds)

    def test_k_two(self):
        outcome = weighted.k_bonferroni([0.02, 0.03, 0.5, 0.9], np.ones(4), 0.05, k=2)
        np.testing.assert_allclose(outcome.thresholds, 0.025)
        self.assertEqual(outcome.rejected.tolist(), [True, False, False, False])
        self.assertEqual(outcome.procedure_id, 'k_bonferroni')
        self.assertEqual(outcome.parameters['k'], 2)

    def test_k_level_bound(self):
        with self.assertRaises(errors.InvalidLevel):
            weighted.k_bonferroni([0.1], [1.0], 0.05, k=20)


class TestHolm(unittest.TestCase):

    def test_step_down_trace(self):
        """Q(1) = 0.02 <= 0.05 / 2, then Q(2) = 0.03 <= 0.05 / 1"""
        outcome = weighted.weighted_holm([0.02, 0.03], [1.0, 1.0], 0.05, single_fold(2))
        self.assertEqual(outcome.rejected.tolist(), [True, True])
        np.testing.assert_allclose(outcome.thresholds, [0.025, 0.05])

    def test_stops_at_first_failure(self):
        outcome = weighted.weighted_holm([0.03, 0.04], [1.0, 1.0], 0.05, single_fold(2))
        self.assertFalse(outcome.rejected.any())

    def test_classical_holm(self):
        """A single fold with unit weights is classical Holm"""
        rng = np.random.default_rng(7)
        for _ in range(200):
            m = int(rng.integers(1, 30))
            p = rng.beta(0.3, 1.0, size=m)
            outcome = weighted.weighted_holm(p, np.ones(m), 0.1)
            self.assertEqual(outcome.rejected.tolist(), textbook_holm(p, 0.1).tolist())

    def test_fold_levels(self):
        parts = hypotheses.FoldPartition([1, 1, 1, 2], 2, hypotheses.USER_SUPPLIED)
        outcome = weighted.weighted_holm([0.01, 0.5, 0.5, 0.5], np.ones(4), 0.08, parts)
        self.assertAlmostEqual(outcome.parameters['fold_levels'][1], 0.06)
        self.assertAlmostEqual(outcome.parameters['fold_levels'][2], 0.02)
        self.assertEqual(outcome.rejected.tolist(), [True, False, False, False])

    def test_zero_weight_never_rejects(self):
        outcome = weighted.weighted_holm([1e-9, 0.5], [0.0, 2.0], 0.05, single_fold(2))
        self.assertFalse(outcome.rejected[0])


class TestSidak(unittest.TestCase):

    def test_exact_square_root(self):
        outcome = weighted.weighted_sidak([0.05, 0.2], [1.0, 1.0], 0.19, single_fold(2))
        np.testing.assert_allclose(outcome.thresholds, [0.1, 0.1])
        self.assertEqual(outcome.rejected.tolist(), [True, False])

    def test_zero_weight(self):
        outcome = weighted.weighted_sidak([1e-12, 0.01], [0.0, 2.0], 0.05, single_fold(2))
        self.assertEqual(outcome.thresholds[0], 0.0)
        self.assertFalse(outcome.rejected[0])


class TestBH(unittest.TestCase):

    P = [0.01, 0.012, 0.04, 0.9]

    def test_step_up(self):
        """0.04 > 3 * 0.05 / 4 so k* = 2"""
        outcome = weighted.weighted_bh(self.P, np.ones(4), 0.05)
        self.assertEqual(outcome.k_star, 2)
        self.assertEqual(outcome.rejected.tolist(), [True, True, False, False])
        self.assertEqual(outcome.procedure_id, 'bh')

    def test_censoring(self):
        outcome = weighted.weighted_bh(self.P, np.ones(4), 0.05, censor_tau=0.011)
        self.assertEqual(outcome.k_star, 1)
        self.assertEqual(outcome.rejected.tolist(), [True, False, False, False])
        self.assertEqual(outcome.procedure_id, 'ihwc')
        self.assertEqual(outcome.parameters['tau'], 0.011)
        self.assertTrue(np.all(outcome.thresholds <= 0.011))

    def test_harmonic_thresholds(self):
        """H_4 = 25/12, so the k = 4 BY threshold at 0.05 is 0.024"""
        outcome = weighted.weighted_bh([0.001] * 4, np.ones(4), 0.05,
                                       reshaping=weighted.ReshapingFunction.harmonic(4))
        self.assertEqual(outcome.k_star, 4)
        np.testing.assert_allclose(outcome.thresholds, 0.024)
        self.assertEqual(outcome.procedure_id, 'by')

    def test_reshaping_by_name(self):
        outcome = weighted.weighted_bh([0.001] * 4, np.ones(4), 0.05, reshaping='harmonic')
        self.assertAlmostEqual(outcome.thresholds[0], 0.024)

    def test_nothing_passes(self):
        outcome = weighted.weighted_bh([0.5, 0.6], np.ones(2), 0.05)
        self.assertEqual(outcome.k_star, 0)
        self.assertFalse(outcome.rejected.any())
        np.testing.assert_array_equal(outcome.thresholds, [0.0, 0.0])

    def test_invalid_censoring(self):
        with self.assertRaises(errors.InvalidConfig):
            weighted.weighted_bh(self.P, np.ones(4), 0.05, censor_tau=0.0)

    def test_unknown_reshaping(self):
        with self.assertRaises(errors.InvalidConfig):
            weighted.ReshapingFunction('square')

    def test_textbook_equivalence(self):
        """Unit weights reproduce textbook BH on random instances"""
        rng = np.random.default_rng(11)
        for _ in range(1000):
            m = int(rng.integers(1, 50))
            alpha = float(rng.uniform(0.01, 0.3))
            p = np.where(rng.random(m) < 0.3, rng.beta(0.2, 3.0, size=m), rng.random(m))
            outcome = weighted.weighted_bh(p, np.ones(m), alpha)
            self.assertEqual(outcome.rejected.tolist(), textbook_bh(p, alpha).tolist())


class TestStorey(unittest.TestCase):

    def test_unit_weights(self):
        self.assertAlmostEqual(
            weighted.storey_pi0([0.1, 0.2, 0.6, 0.8], np.ones(4), 0.5), 1.5)

    def test_all_above(self):
        self.assertAlmostEqual(
            weighted.storey_pi0([0.6, 0.7, 0.8], np.ones(3), 0.5), 4 / 1.5)

    def test_weighted(self):
        self.assertAlmostEqual(
            weighted.storey_pi0([0.9, 0.1, 0.7, 0.2], [3.0, 1.0, 0.0, 0.0], 0.5), 3.0)

    def test_tau_prime_bounds(self):
        with self.assertRaises(errors.InvalidTauPrime):
            weighted.storey_pi0([0.5], [1.0], 1.0)
        with self.assertRaises(errors.InvalidTauPrime):
            weighted.storey_pi0([0.5], [1.0], 0.01, tau=0.1)

    def test_per_fold_estimates(self):
        parts = hypotheses.FoldPartition([1, 1, 2, 2], 2, hypotheses.USER_SUPPLIED)
        adjusted, pi0 = weighted.storey_weights([0.1, 0.9, 0.6, 0.8], np.ones(4),
                                                parts, 0.5)
        self.assertAlmostEqual(pi0[1], 2.0)
        self.assertAlmostEqual(pi0[2], 3.0)
        np.testing.assert_allclose(adjusted, [0.5, 0.5, 1 / 3., 1 / 3.])


class TestApplyProcedure(unittest.TestCase):

    def test_dispatch(self):
        p = [0.001, 0.02, 0.3, 0.8]
        for name, expected in [('bonferroni', 'bonferroni'), ('bh', 'bh'),
                               ('BY', 'by'), ('holm', 'holm'), ('sidak', 'sidak'),
                               ('ihwc', 'ihwc'), ('ihwc-storey', 'ihwc_storey')]:
            outcome = procedures.apply_procedure(name, p, np.ones(4), 0.1,
                                                 partition=single_fold(4))
            self.assertEqual(outcome.procedure_id, expected)

    def test_default_tau(self):
        outcome = procedures.apply_procedure('ihwc', [0.001, 0.5], np.ones(2), 0.1)
        self.assertEqual(outcome.parameters['tau'], 1e-4)
        self.assertFalse(outcome.rejected.any())

    def test_storey_records_pi0(self):
        outcome = procedures.apply_procedure('ihwc_storey', [1e-5, 0.9], np.ones(2), 0.1,
                                             partition=single_fold(2))
        self.assertEqual(set(outcome.parameters['pi0']), set([1]))
        self.assertEqual(outcome.parameters['tau_prime'], 0.5)

    def test_unknown(self):
        with self.assertRaises(errors.InvalidConfig):
            procedures.apply_procedure('fisher', [0.1], [1.0], 0.1)


class TestPropertiesMeta(type):
    """
    Properties that hold for every input, one test per random instance.
    """

    def __new__(mcs, name, bases, dict):

        def instance(seed):
            rng = np.random.default_rng(seed)
            m = int(rng.integers(2, 60))
            K = int(rng.integers(1, min(m, 4) + 1))
            assignments = np.arange(m) % K + 1
            rng.shuffle(assignments)
            parts = hypotheses.FoldPartition(assignments, K, hypotheses.USER_SUPPLIED)
            raw = rng.exponential(size=m) * (rng.random(m) > 0.2)
            weights = hypotheses.normalize_weights(raw, parts).weights
            p = np.where(rng.random(m) < 0.4, rng.beta(0.1, 5.0, size=m), rng.random(m))
            alpha = float(rng.uniform(0.01, 0.25))
            return p, weights, parts, alpha

        def gen_holm_test(seed):
            def test(self):
                p, w, parts, alpha = instance(seed)
                holm = weighted.weighted_holm(p, w, alpha, parts).rejected
                bonferroni = weighted.weighted_bonferroni(p, w, alpha).rejected
                self.assertTrue(np.all(holm[bonferroni]))
            return test

        def gen_by_test(seed):
            def test(self):
                p, w, _, alpha = instance(seed)
                by = weighted.weighted_bh(p, w, alpha, reshaping='harmonic')
                bh = weighted.weighted_bh(p, w, alpha / _core.harmonic_number(len(p)))
                self.assertEqual(by.rejected.tolist(), bh.rejected.tolist())
                np.testing.assert_array_equal(by.thresholds, bh.thresholds)
            return test

        def gen_censoring_test(seed):
            def test(self):
                p, w, _, alpha = instance(seed)
                tau = float(np.quantile(p, 0.2))
                censored = weighted.weighted_bh(p, w, alpha, censor_tau=max(tau, 1e-6))
                plain = weighted.weighted_bh(p, w, alpha)
                self.assertTrue(np.all(plain.rejected[censored.rejected]))
                self.assertTrue(np.all(p[censored.rejected] <= max(tau, 1e-6)))
            return test

        def gen_zero_weight_test(seed):
            def test(self):
                p, w, parts, alpha = instance(seed)
                blocked = (w == 0) & (p > 0)
                for name in ('bonferroni', 'holm', 'sidak', 'bh', 'by', 'ihwc'):
                    outcome = procedures.apply_procedure(name, p, w, alpha,
                                                         partition=parts, tau=0.5)
                    self.assertFalse(outcome.rejected[blocked].any(), name)
            return test

        def gen_monotone_test(seed):
            def test(self):
                p, w, _, alpha = instance(seed)
                low = weighted.weighted_bh(p, w, alpha / 2).rejected
                high = weighted.weighted_bh(p, w, alpha).rejected
                self.assertTrue(np.all(high[low]))
            return test

        for seed in range(30):
            dict['test_holm_contains_bonferroni_%02d' % seed] = gen_holm_test(seed)
            dict['test_by_is_bh_at_lowered_level_%02d' % seed] = gen_by_test(seed)
            dict['test_censoring_only_removes_%02d' % seed] = gen_censoring_test(seed)
            dict['test_zero_weight_never_rejects_%02d' % seed] = gen_zero_weight_test(seed)
            dict['test_bh_monotone_in_alpha_%02d' % seed] = gen_monotone_test(seed)
        return type.__new__(mcs, name, bases, dict)


class TestProperties(unittest.TestCase, metaclass=TestPropertiesMeta):
    pass


if __name__ == '__main__':
    unittest.main()
