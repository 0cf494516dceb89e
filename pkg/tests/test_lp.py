#!/usr/bin/env python
###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Dense simplex solver, checked by hand and against HiGHS
"""

import math
import unittest

import numpy as np

from ihw.core import errors
from ihw.estimation import lp


class TestSimplex(unittest.TestCase):

    def test_single_bound(self):
        """maximize x s.t. x <= 3"""
        solution = lp.solve_lp(lp.LinearProgram([1.0], [([1.0], '<=', 3.0)]))
        self.assertTrue(solution.optimal)
        self.assertAlmostEqual(solution.primal[0], 3.0)
        self.assertAlmostEqual(solution.objective_value, 3.0)

    def test_degenerate_face(self):
        """Any vertex of x + y = 1 is accepted"""
        solution = lp.solve_lp(lp.LinearProgram([1.0, 1.0], [([1.0, 1.0], '<=', 1.0)]))
        self.assertTrue(solution.optimal)
        self.assertAlmostEqual(solution.objective_value, 1.0)

    def test_infeasible(self):
        program = lp.LinearProgram([1.0], [([1.0], '>=', 2.0), ([1.0], '<=', 1.0)])
        self.assertEqual(lp.solve_lp(program).status, lp.INFEASIBLE)

    def test_unbounded(self):
        self.assertEqual(lp.solve_lp(lp.LinearProgram([1.0])).status, lp.UNBOUNDED)

    def test_no_constraints_at_origin(self):
        solution = lp.solve_lp(lp.LinearProgram([-1.0, -2.0]))
        self.assertTrue(solution.optimal)
        np.testing.assert_allclose(solution.primal, [0.0, 0.0])

    def test_equality(self):
        program = lp.LinearProgram([1.0, 2.0], [([1.0, 1.0], '=', 1.0)])
        solution = lp.solve_lp(program)
        np.testing.assert_allclose(solution.primal, [0.0, 1.0], atol=1e-12)
        self.assertAlmostEqual(solution.objective_value, 2.0)

    def test_free_variable(self):
        """Free variables may go negative"""
        program = lp.LinearProgram([-1.0], [([1.0], '>=', -2.0)],
                                   bounds=[(-math.inf, math.inf)])
        solution = lp.solve_lp(program)
        self.assertAlmostEqual(solution.primal[0], -2.0)

    def test_upper_only_bound(self):
        program = lp.LinearProgram([-1.0], bounds=[(-math.inf, 4.0)],
                                   constraints=[([1.0], '>=', 1.5)])
        self.assertAlmostEqual(lp.solve_lp(program).primal[0], 1.5)

    def test_box_bounds(self):
        program = lp.LinearProgram([1.0, 1.0], bounds=[(0, 0.5), (0.25, 0.75)])
        solution = lp.solve_lp(program)
        np.testing.assert_allclose(solution.primal, [0.5, 0.75])

    def test_crossed_bounds(self):
        program = lp.LinearProgram([1.0], bounds=[(1.0, 0.0)])
        self.assertEqual(lp.solve_lp(program).status, lp.INFEASIBLE)

    def test_negative_rhs(self):
        program = lp.LinearProgram([-1.0], [([-1.0], '<=', -1.0), ([1.0], '<=', 4.0)])
        self.assertAlmostEqual(lp.solve_lp(program).primal[0], 1.0)

    def test_relation_spellings(self):
        program = lp.LinearProgram([1.0], [([1.0], '≤', 2.0)])
        self.assertAlmostEqual(lp.solve_lp(program).primal[0], 2.0)

    def test_dimension_mismatch(self):
        program = lp.LinearProgram([1.0], [([1.0, 1.0], '<=', 1.0)])
        with self.assertRaises(errors.DimensionMismatch):
            lp.solve_lp(program)

    def test_unknown_relation(self):
        with self.assertRaises(errors.InvalidProgram):
            lp.LinearProgram([1.0], [([1.0], '<', 1.0)])

    def test_non_finite_coefficient(self):
        program = lp.LinearProgram([1.0], [([math.inf], '<=', 1.0)])
        with self.assertRaises(errors.InvalidProgram):
            lp.solve_lp(program)

    def test_unknown_method(self):
        with self.assertRaises(errors.InvalidProgram):
            lp.solve_lp(lp.LinearProgram([1.0]), method='interior')

    def test_highs_statuses(self):
        infeasible = lp.LinearProgram([1.0], [([1.0], '>=', 2.0), ([1.0], '<=', 1.0)])
        self.assertEqual(lp.solve_lp(infeasible, method='highs').status, lp.INFEASIBLE)
        self.assertEqual(lp.solve_lp(lp.LinearProgram([1.0]), method='highs').status,
                         lp.UNBOUNDED)


class TestAgainstHighsMeta(type):
    """
    Random bounded programs: the simplex optimum must match HiGHS.
    """

    def __new__(mcs, name, bases, dict):

        def gen_test(seed):
            def test(self):
                rng = np.random.default_rng(seed)
                n = 2 + seed % 6
                rows = 1 + seed % 5
                program = lp.LinearProgram(rng.normal(size=n))
                for a, b in zip(rng.uniform(0.1, 1.0, size=(rows, n)),
                                rng.uniform(1.0, 2.0, size=rows)):
                    program.add_constraint(a, '<=', b)
                program.add_constraint(np.ones(n), '>=', 0.1)
                if seed % 3 == 0:
                    program.bounds[0] = (0.0, 0.2)

                simplex = lp.solve_lp(program)
                highs = lp.solve_lp(program, method='highs')
                self.assertTrue(simplex.optimal)
                self.assertTrue(highs.optimal)
                self.assertAlmostEqual(simplex.objective_value,
                                       highs.objective_value, places=6)
                self.assertTrue(program.is_feasible(simplex.primal))
            return test

        for seed in range(40):
            dict['test_random_program_%02d' % seed] = gen_test(seed)
        return type.__new__(mcs, name, bases, dict)


class TestAgainstHighs(unittest.TestCase, metaclass=TestAgainstHighsMeta):
    pass


if __name__ == '__main__':
    unittest.main()
