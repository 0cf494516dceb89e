###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Conditional local false discovery rates

    lfdr(t | j) = pi0_j / f(t | j)

with f(t | j) the Grenander density of bin j (f(0 | j) = inf, so lfdr = 0 at
t = 0, and lfdr = inf where the density is zero). The Cfdr step-up procedure
rejects the k* hypotheses with the smallest lfdr, k* being the largest k for
which the mean of the k smallest values is at most alpha.
"""

import logging

import numpy as np

from .core import errors
from .core import wrappers
from .core import _core
from .estimation import grenander
from .estimation import learner
from .procedures.outcome import TestOutcome

log = logging.getLogger(__name__)


class LfdrEstimate(wrappers.ObjectWrapper):
    """ Per-hypothesis lfdr values in [0, inf] """

    def __init__(self, values):
        super(LfdrEstimate, self).__init__(values=np.asarray(values, dtype=float))

    def __len__(self):
        return len(self.values)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.values
        return self.values.astype(dtype)


def _bin_labels(bins):
    if isinstance(bins, learner.BinnedCovariate):
        return bins.bin_of
    return np.asarray(bins, dtype=int)


def conditional_lfdr(model, pvalues, bins):
    p = _core.as_vector(pvalues)
    labels = _bin_labels(bins)
    _core.check_same_length(p, labels)
    if len(labels) and (labels.min() < 1 or labels.max() > model.J):
        raise errors.ValidationError(
            'bin labels must lie in 1..%d' % model.J)

    values = np.empty(len(p))
    for j, cdf in enumerate(model.per_bin_cdf, start=1):
        in_bin = labels == j
        if not np.any(in_bin):
            continue
        density = np.atleast_1d(grenander.eval_density(cdf, p[in_bin]))
        pi0 = model.per_bin_pi0[j - 1]
        with np.errstate(divide='ignore'):
            lfdr = np.where(np.isinf(density), 0.0, pi0 / density)
        values[in_bin] = lfdr
    return LfdrEstimate(values)


def cfdr_procedure(lfdr, alpha):
    """
    Rejects every hypothesis with lfdr <= lfdr_(k*); tied values are
    rejected together, so k_star is the actual number of rejections.
    """
    values = _core.as_vector(np.asarray(lfdr))
    alpha = _core.check_level(alpha)
    if np.any(np.isnan(values)) or np.any(values < 0):
        raise errors.ValidationError('lfdr values must lie in [0, inf]')
    m = len(values)

    ordered = np.sort(values)
    with np.errstate(invalid='ignore'):
        running = np.cumsum(ordered) / np.arange(1, m + 1)
    passing = np.flatnonzero(running <= alpha)
    k = int(passing[-1]) + 1 if len(passing) else 0

    if k:
        cutoff = ordered[k - 1]
        rejected = values <= cutoff
    else:
        cutoff = 0.0
        rejected = np.zeros(m, dtype=bool)
    return TestOutcome(rejected, np.full(m, cutoff), values, 'cfdr',
                       dict(alpha=alpha, lfdr_cutoff=cutoff, k_mean=k))


def cross_fitted_lfdr(table, bins, partition, censor_tau=None):
    """
    lfdr of the hypotheses in fold k from the model estimated on the other
    folds.
    """
    values = np.empty(table.m)
    for fold, idx in partition:
        heldout = partition.assignments != fold
        model = learner.estimate_conditional_model(
            table.pvalues[heldout], bins.bin_of[heldout], bins,
            target_bins=bins.bin_of[idx], censor_tau=censor_tau)
        values[idx] = conditional_lfdr(model, table.pvalues[idx],
                                       bins.bin_of[idx]).values
        log.debug('Fold %d: lfdr for %d hypotheses', fold, len(idx))
    return LfdrEstimate(values)
