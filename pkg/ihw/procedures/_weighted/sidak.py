###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Fold-aware weighted Šidák

Within fold l at level a = alpha * |I_l| / m, reject hypothesis i iff
P_i <= 1 - (1 - a) ** (W_i / |I_l|). Needs independent null p-values; this is
documented, not checked.
"""

import numpy as np

from ...core import _core
from .. import outcome


def weighted_sidak(pvalues, weights, alpha, partition=None):
    p, w = outcome.prepare(pvalues, weights)
    alpha = _core.check_level(alpha)
    m = len(p)

    thresholds = np.zeros(m)
    levels = {}
    for fold, idx in outcome.fold_groups(partition, m):
        level = alpha * len(idx) / m
        levels[fold] = level
        exponent = w[idx] / len(idx)
        thresholds[idx] = 0.0 - np.expm1(exponent * np.log1p(-level))

    rejected = p <= thresholds
    return outcome.TestOutcome(rejected, thresholds,
                               outcome.weighted_pvalues(p, w), 'sidak',
                               dict(alpha=alpha, fold_levels=levels))
