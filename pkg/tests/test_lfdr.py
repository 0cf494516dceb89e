#!/usr/bin/env python
###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Conditional local fdr and the Cfdr procedure
"""

import math
import unittest

import numpy as np

from ihw import hypotheses
from ihw import lfdr
from ihw.core import errors
from ihw.estimation import grenander
from ihw.estimation import learner


def model(*samples):
    cdfs = [grenander.fit_grenander(sample) for sample in samples]
    J = len(cdfs)
    return learner.ConditionalModel(cdfs, np.ones(J), np.full(J, 1.0 / J))


class TestConditionalLfdr(unittest.TestCase):

    def test_uniform_bin(self):
        estimate = lfdr.conditional_lfdr(model([0.25, 0.5, 0.75, 1.0]),
                                         [0.1, 0.5, 0.9], [1, 1, 1])
        np.testing.assert_allclose(estimate.values, [1.0, 1.0, 1.0])
        self.assertEqual(len(estimate), 3)

    def test_single_point_density(self):
        """Slope 2 below 0.5 and 0 above"""
        estimate = lfdr.conditional_lfdr(model([0.5]), [0.25, 0.75, 0.0], [1, 1, 1])
        self.assertAlmostEqual(estimate.values[0], 0.5)
        self.assertTrue(math.isinf(estimate.values[1]))
        self.assertEqual(estimate.values[2], 0.0)

    def test_bins_select_their_density(self):
        conditional = model([0.5], [0.25, 0.5, 0.75, 1.0])
        bins = learner.BinnedCovariate(2, [1, 2], learner.ORDERED)
        estimate = lfdr.conditional_lfdr(conditional, [0.25, 0.25], bins)
        np.testing.assert_allclose(np.asarray(estimate), [0.5, 1.0])

    def test_bad_bin_label(self):
        with self.assertRaises(errors.ValidationError):
            lfdr.conditional_lfdr(model([0.5]), [0.2], [2])

    def test_monotone_within_bin(self):
        rng = np.random.default_rng(1)
        sample = rng.beta(0.4, 1.0, size=300)
        p = np.sort(rng.random(50))
        values = lfdr.conditional_lfdr(model(sample), p, np.ones(50)).values
        self.assertTrue(np.all(np.diff(values) >= 0))


class TestCfdr(unittest.TestCase):

    def test_running_mean(self):
        """Running means 0.01, 0.03, 0.0867, 0.19 stop at k = 3"""
        outcome = lfdr.cfdr_procedure([0.2, 0.01, 0.5, 0.05], 0.1)
        self.assertEqual(outcome.rejected.tolist(), [True, True, False, True])
        self.assertEqual(outcome.k_star, 3)
        self.assertEqual(outcome.parameters['lfdr_cutoff'], 0.2)
        self.assertEqual(outcome.procedure_id, 'cfdr')

    def test_nothing_below_alpha(self):
        outcome = lfdr.cfdr_procedure([0.3, 0.5, math.inf], 0.1)
        self.assertFalse(outcome.rejected.any())
        self.assertEqual(outcome.k_star, 0)

    def test_all_zero(self):
        outcome = lfdr.cfdr_procedure(np.zeros(5), 0.05)
        self.assertTrue(outcome.rejected.all())

    def test_ties_are_rejected_together(self):
        outcome = lfdr.cfdr_procedure([0.0, 0.18, 0.18], 0.1)
        self.assertEqual(outcome.parameters['k_mean'], 2)
        self.assertEqual(outcome.k_star, 3)

    def test_negative_values(self):
        with self.assertRaises(errors.ValidationError):
            lfdr.cfdr_procedure([-0.1, 0.2], 0.1)

    def test_accepts_estimates(self):
        estimate = lfdr.LfdrEstimate([0.01, 0.9])
        self.assertEqual(lfdr.cfdr_procedure(estimate, 0.1).rejected.tolist(),
                         [True, False])


class TestCrossFittedLfdr(unittest.TestCase):

    def test_every_hypothesis_gets_a_value(self):
        rng = np.random.default_rng(3)
        m = 400
        x = rng.random(m)
        p = np.where(x < 0.5, rng.beta(0.3, 1.0, m), rng.random(m))
        table = hypotheses.HypothesisTable.from_arrays(p, x)
        bins = learner.bin_covariate(table, 2)
        parts = hypotheses.split_folds(table, 2, hypotheses.RANDOM, seed=4)
        values = lfdr.cross_fitted_lfdr(table, bins, parts).values
        self.assertEqual(len(values), m)
        self.assertTrue(np.all(values >= 0))
        self.assertLess(np.median(values[x < 0.5]), np.median(values[x >= 0.5]))


if __name__ == '__main__':
    unittest.main()
