###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Weighted Bonferroni and k-Bonferroni
"""

from ...core import errors
from ...core import _core
from .. import outcome


def weighted_bonferroni(pvalues, weights, alpha, procedure_id='bonferroni',
                        **parameters):
    """
    Rejects hypothesis i iff P_i <= alpha * W_i / m.
    """
    p, w = outcome.prepare(pvalues, weights)
    alpha = _core.check_level(alpha)
    m = len(p)

    thresholds = alpha * w / m
    rejected = p <= thresholds
    parameters.update(alpha=alpha)
    return outcome.TestOutcome(rejected, thresholds,
                               outcome.weighted_pvalues(p, w),
                               procedure_id, parameters)


def k_bonferroni(pvalues, weights, alpha, k=1):
    """
    Weighted Bonferroni at level k * alpha; controls P[V >= k] <= k * alpha.
    """
    k = int(k)
    if k < 1:
        raise errors.InvalidConfig('k must be a positive integer, got %r' % k)
    alpha = _core.check_level(alpha)
    _core.check_level(k * alpha, name='k * alpha')
    if k == 1:
        return weighted_bonferroni(pvalues, weights, alpha)
    return weighted_bonferroni(pvalues, weights, k * alpha,
                               procedure_id='k_bonferroni', k=k,
                               nominal_alpha=alpha)
