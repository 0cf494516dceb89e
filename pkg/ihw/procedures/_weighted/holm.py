###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Fold-aware weighted Holm

Weighted Holm runs separately in every fold l at level alpha * |I_l| / m and
the rejections are pooled. Within a fold the hypotheses are ordered by
Q = P / W and step-down compares Q_(l) with alpha_l / m_l, where m_l is the
sum of the weights from position l onwards.
"""

import math

import numpy as np

from ...core import _core
from .. import outcome


def _holm_fold(q, w, level):
    """
    Step-down within one fold. Returns (rejected, per-step q thresholds).
    """
    order = np.argsort(q, kind='stable')
    tail = np.cumsum(w[order][::-1])[::-1]
    with np.errstate(divide='ignore'):
        step = np.where(tail > 0, level / np.where(tail > 0, tail, 1.0), math.inf)

    passed = np.isfinite(q[order]) & (q[order] <= step)
    failures = np.flatnonzero(~passed)
    k_star = failures[0] if len(failures) else len(order)

    rejected = np.zeros(len(q), dtype=bool)
    if k_star > 0:
        cutoff = q[order][k_star - 1]
        rejected = q <= cutoff

    q_thresholds = np.empty(len(q))
    q_thresholds[order] = step
    return rejected, q_thresholds


def weighted_holm(pvalues, weights, alpha, partition=None):
    p, w = outcome.prepare(pvalues, weights)
    alpha = _core.check_level(alpha)
    m = len(p)
    q = outcome.weighted_pvalues(p, w)

    rejected = np.zeros(m, dtype=bool)
    thresholds = np.zeros(m)
    levels = {}
    for fold, idx in outcome.fold_groups(partition, m):
        level = alpha * len(idx) / m
        levels[fold] = level
        fold_rejected, q_thresholds = _holm_fold(q[idx], w[idx], level)
        rejected[idx] = fold_rejected
        with np.errstate(invalid='ignore'):
            thresholds[idx] = np.where(w[idx] > 0, w[idx] * q_thresholds, 0.0)

    return outcome.TestOutcome(rejected, thresholds, q, 'holm',
                               dict(alpha=alpha, fold_levels=levels))
