###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Weighted Storey-type null proportion estimator

    pi0 = (max_i W_i + sum_i W_i 1{P_i > tau'}) / (|I_l| (1 - tau'))

computed per fold; IHWc-Storey divides the weights of fold l by its pi0.
"""

import logging

import numpy as np

from ...core import errors
from .. import outcome

log = logging.getLogger(__name__)


def storey_pi0(pvalues, weights, tau_prime, tau=0.0):
    p, w = outcome.prepare(pvalues, weights)
    tau_prime = float(tau_prime)
    if not (tau <= tau_prime < 1.0):
        raise errors.InvalidTauPrime(tau_prime, tau)
    numerator = w.max() + w[p > tau_prime].sum()
    return float(numerator / (len(p) * (1.0 - tau_prime)))


def storey_weights(pvalues, weights, partition, tau_prime, tau=0.0):
    """
    Returns (W / pi0 per fold, {fold: pi0}).
    """
    p, w = outcome.prepare(pvalues, weights)
    adjusted = np.empty_like(w)
    estimates = {}
    for fold, idx in outcome.fold_groups(partition, len(p)):
        pi0 = storey_pi0(p[idx], w[idx], tau_prime, tau)
        estimates[fold] = pi0
        adjusted[idx] = w[idx] / pi0
        log.info('Fold %d: weighted Storey pi0 = %.4f', fold, pi0)
    return adjusted, estimates
