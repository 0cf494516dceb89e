###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Weighted Benjamini-Hochberg with optional reshaping and censoring

    k* = max{k : #{i : P_i <= (alpha W_i beta(k) / m) ^ tau} >= k}

and every hypothesis with P_i <= (alpha W_i beta(k*) / m) ^ tau is rejected.
beta is the identity for BH and r / H_m for Benjamini-Yekutieli; tau = 1
without censoring. k* is found by one scan over the sorted effective
statistics Q_i = P_i / W_i (with Q_i = inf whenever P_i > tau).
"""

import numpy as np

from ...core import errors
from ...core import wrappers
from ...core import _core
from .. import outcome

IDENTITY = 'identity'
HARMONIC = 'harmonic'


class ReshapingFunction(wrappers.ObjectWrapper):
    """
    beta(r) = r / divisor with divisor 1 (BH) or H_m (BY).
    """

    def __init__(self, kind=IDENTITY, m=None):
        if kind not in (IDENTITY, HARMONIC):
            raise errors.InvalidConfig('unknown reshaping %r' % (kind,))
        if kind == HARMONIC and not m:
            raise errors.InvalidConfig('harmonic reshaping needs m')
        divisor = _core.harmonic_number(m) if kind == HARMONIC else 1.0
        super(ReshapingFunction, self).__init__(kind=kind, m=m, divisor=divisor)

    def __call__(self, r):
        return np.asarray(r, dtype=float) / self.divisor

    @classmethod
    def identity(cls):
        return cls(IDENTITY)

    @classmethod
    def harmonic(cls, m):
        return cls(HARMONIC, m)


def weighted_bh(pvalues, weights, alpha, reshaping=None, censor_tau=None):
    p, w = outcome.prepare(pvalues, weights)
    alpha = _core.check_level(alpha)
    m = len(p)

    if reshaping is None:
        reshaping = ReshapingFunction.identity()
    elif isinstance(reshaping, str):
        reshaping = ReshapingFunction(reshaping, m)
    tau = 1.0 if censor_tau is None else float(censor_tau)
    if not 0.0 < tau <= 1.0:
        raise errors.InvalidConfig('censoring threshold %r must lie in (0, 1]' % tau)

    # alpha * beta(k) / m == (alpha / divisor) * k / m, the BH form at a
    # lowered level; keeping this shape makes BY(alpha) and BH(alpha / H_m)
    # agree to the last bit
    level = alpha / reshaping.divisor

    q = outcome.weighted_pvalues(p, w)
    effective = np.where(p <= tau, q, np.inf)
    ordered = np.sort(effective, kind='stable')
    ks = np.arange(1, m + 1)
    passing = np.flatnonzero(ordered <= level * ks / m)
    k_star = int(passing[-1]) + 1 if len(passing) else 0

    cutoff = level * k_star / m
    rejected = effective <= cutoff if k_star else np.zeros(m, dtype=bool)
    thresholds = np.minimum(level * w * k_star / m, tau)

    procedure_id = 'by' if reshaping.kind == HARMONIC else 'bh'
    parameters = dict(alpha=alpha, reshaping=reshaping.kind)
    if censor_tau is not None:
        procedure_id = 'ihwc'
        parameters['tau'] = tau
    return outcome.TestOutcome(rejected, thresholds, q, procedure_id,
                               parameters, k_star=k_star)
