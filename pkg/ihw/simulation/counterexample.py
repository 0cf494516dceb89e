###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Independence of P_i and W_i for every null i is not enough for FDR control.

Four independent uniform null p-values. If alpha/2 <= P_1 <= alpha then
(W_3, W_4) = (2, 0), else (0, 2); if alpha/2 <= P_3 <= alpha then
(W_1, W_2) = (2, 0), else (0, 2). Every W_i is independent of P_i, yet
weighted BH at level alpha has

    FWER = FDR = alpha + alpha^2 / 4 (1 - alpha) > alpha.
"""

import logging
import math

import numpy as np

from ..core import errors
from ..core import _core
from . import harness

log = logging.getLogger(__name__)

M = 4
BATCH = 250000


def analytic_fwer(alpha):
    alpha = _core.check_level(alpha)
    return alpha + alpha ** 2 / 4.0 * (1.0 - alpha)


def adversarial_weights(pvalues, alpha):
    """ The weight matrix for a (reps, 4) array of p-values """
    def pair(p):
        hit = (alpha / 2.0 <= p) & (p <= alpha)
        return np.where(hit, 2.0, 0.0), np.where(hit, 0.0, 2.0)

    weights = np.empty_like(pvalues)
    weights[:, 2], weights[:, 3] = pair(pvalues[:, 0])
    weights[:, 0], weights[:, 1] = pair(pvalues[:, 2])
    return weights


def batch_weighted_bh(pvalues, weights, alpha):
    """ Weighted BH applied to every row; returns the rejection matrix """
    reps, m = pvalues.shape
    with np.errstate(divide='ignore', invalid='ignore'):
        q = np.where(weights > 0, pvalues / weights,
                     np.where(pvalues == 0, 0.0, np.inf))
    ordered = np.sort(q, axis=1)
    passing = ordered <= alpha * np.arange(1, m + 1) / m
    # largest passing k per row, 0 when nothing passes
    k_star = np.where(passing.any(axis=1),
                      m - np.argmax(passing[:, ::-1], axis=1), 0)
    return q <= (alpha * k_star / m)[:, None]


def counterexample_naive_weighting(alpha, reps, seed, adversarial=True):
    """
    Monte Carlo FWER of weighted BH under the adversarial weights (or W = 1
    with ``adversarial=False``). All four hypotheses are null, so FWER and
    FDR coincide.
    """
    alpha = _core.check_level(alpha)
    reps = int(reps)
    if reps < 1:
        raise errors.InvalidConfig('reps must be at least 1, got %d' % reps)
    hits = 0
    rejections = 0
    done = 0
    batch = 0
    while done < reps:
        size = min(BATCH, reps - done)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(batch,)))
        p = rng.random((size, M))
        w = adversarial_weights(p, alpha) if adversarial else np.ones_like(p)
        rejected = batch_weighted_bh(p, w, alpha)
        hits += int(rejected.any(axis=1).sum())
        rejections += int(rejected.sum())
        done += size
        batch += 1

    fwer = hits / float(reps)
    se = math.sqrt(fwer * (1.0 - fwer) / (reps - 1)) if reps > 1 else 0.0
    analytic = analytic_fwer(alpha)
    log.info('Counterexample at alpha = %g: MC FWER %.5f (SE %.5f), analytic %.5f',
             alpha, fwer, se, analytic)
    return harness.ErrorReport(
        scenario='counterexample', alpha=alpha, reps=reps,
        procedure='naive-weighted-bh' if adversarial else 'bh',
        fdr=fwer, fdr_se=se, fwer=fwer, fwer_se=se, kfwer=fwer, kfwer_se=se, k=1,
        mean_discoveries=rejections / float(reps), analytic_fwer=analytic)
