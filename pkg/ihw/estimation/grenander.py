###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Grenander estimator of a nonincreasing p-value density on [0, 1]

The estimate of the distribution function is the least concave majorant (LCM)
of the empirical distribution function; its left derivative is the maximum
likelihood nonincreasing density. The LCM is computed as the upper convex hull
of the ECDF vertices (0, 0), (p_(j), ECDF(p_(j))), (1, 1).
"""

import math

import numpy as np
from sklearn.isotonic import isotonic_regression

from ..core import errors
from ..core import wrappers
from ..core import _core

# hull turns smaller than this (relative) count as collinear
_COLLINEAR = 1e-12


class StepEcdf(wrappers.ObjectWrapper):
    """
    Right-continuous empirical distribution function with tied points merged.
    """

    def __init__(self, sorted_points, jump_sizes):
        super(StepEcdf, self).__init__(sorted_points=sorted_points,
                                       jump_sizes=jump_sizes)

    @property
    def heights(self):
        return np.minimum(np.cumsum(self.jump_sizes), 1.0)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.sorted_points, t, side='right')
        heights = np.concatenate([[0.0], self.heights])
        return heights[idx]


class GrenanderCdf(wrappers.ObjectWrapper):
    """
    Concave piecewise linear distribution function on [0, 1].

    :ivar knots: increasing, knots[0] = 0 and knots[-1] = 1
    :ivar heights: G at the knots; heights[0] > 0 only for an atom at zero
    :ivar slopes: strictly decreasing, one per segment
    """

    def __init__(self, knots, heights, slopes):
        super(GrenanderCdf, self).__init__(knots=knots, heights=heights,
                                           slopes=slopes)

    def segments(self):
        """
        (slope, intercept) pairs (a_s, b_s) with G(t) = min_s a_s t + b_s
        """
        intercepts = self.heights[:-1] - self.slopes * self.knots[:-1]
        return list(zip(self.slopes.tolist(), intercepts.tolist()))

    @property
    def atom(self):
        return float(self.heights[0])

    def cdf(self, t):
        return eval_cdf(self, t)

    def density(self, t):
        return eval_density(self, t)


def ecdf(pvalues):
    points = _core.as_vector(pvalues)
    if len(points) == 0:
        raise errors.EmptyInput('p-value list')
    if np.any(~np.isfinite(points)) or np.any((points < 0) | (points > 1)):
        bad = int(np.flatnonzero(~((points >= 0) & (points <= 1)))[0])
        raise errors.PValueOutOfRange(bad, points[bad])
    sorted_points, counts = np.unique(points, return_counts=True)
    return StepEcdf(sorted_points, counts / float(len(points)))


def pava_decreasing(values, block_weights=None):
    """
    Weighted least squares projection of ``values`` onto nonincreasing
    sequences (pool adjacent violators).
    """
    y = _core.as_vector(values)
    if block_weights is None:
        w = np.ones_like(y)
    else:
        w = _core.as_vector(block_weights)
        _core.check_same_length(y, w)
    nonpositive = np.flatnonzero(~(w > 0))
    if len(nonpositive):
        raise errors.NonpositiveWeight(int(nonpositive[0]))
    if len(y) == 0:
        return y
    return np.asarray(isotonic_regression(y, sample_weight=w.copy(),
                                          increasing=False), dtype=float)


def _upper_hull(x, y):
    """ Indices of the upper convex hull of points sorted by x (monotone chain) """
    hull = []
    for k in range(len(x)):
        while len(hull) >= 2:
            i, j = hull[-2], hull[-1]
            cross = (x[j] - x[i]) * (y[k] - y[i]) - (y[j] - y[i]) * (x[k] - x[i])
            scale = abs(x[k] - x[i]) + abs(y[k] - y[i])
            if cross >= -_COLLINEAR * scale:
                hull.pop()
            else:
                break
        hull.append(k)
    return hull


def least_concave_majorant(step_ecdf):
    points = step_ecdf.sorted_points
    counts = np.cumsum(step_ecdf.jump_sizes)
    counts = np.minimum(counts, 1.0)

    if points[0] == 0:
        # atom at zero: the majorant starts at (0, ECDF(0))
        x = points
        y = counts
    else:
        x = np.concatenate([[0.0], points])
        y = np.concatenate([[0.0], counts])
    if x[-1] < 1:
        x = np.concatenate([x, [1.0]])
        y = np.concatenate([y, [1.0]])
    y[-1] = 1.0

    hull = _upper_hull(x, y)
    knots = x[hull]
    heights = y[hull]
    slopes = np.diff(heights) / np.diff(knots)
    return GrenanderCdf(knots, heights, slopes)


def fit_grenander(pvalues):
    return least_concave_majorant(ecdf(pvalues))


def _check_domain(t, lower_open=False):
    t = np.asarray(t, dtype=float)
    low_bad = (t <= 0) if lower_open else (t < 0)
    bad = low_bad | (t > 1) | np.isnan(t)
    if np.any(bad):
        raise errors.OutOfDomain(t[bad].flat[0] if t.ndim else float(t))
    return t


def eval_cdf(g, t):
    t = _check_domain(t)
    value = np.interp(t, g.knots, g.heights)
    return float(value) if value.ndim == 0 else value


def eval_density(g, t):
    """
    Left-segment slope at t; +inf at t = 0.
    """
    t = _check_domain(t)
    segment = np.searchsorted(g.knots, t, side='left') - 1
    segment = np.clip(segment, 0, len(g.slopes) - 1)
    value = np.where(t == 0, math.inf, g.slopes[segment])
    return float(value) if value.ndim == 0 else value
