###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

from ._weighted.bh import ReshapingFunction
from ._weighted.bh import weighted_bh
from ._weighted.bonferroni import k_bonferroni
from ._weighted.bonferroni import weighted_bonferroni
from ._weighted.holm import weighted_holm
from ._weighted.sidak import weighted_sidak
from ._weighted.storey import storey_pi0
from ._weighted.storey import storey_weights
from ..core import codes
from ..core import errors
from .outcome import TestOutcome


def apply_procedure(procedure, pvalues, weights, alpha, partition=None, k=1,
                    tau=None, tau_prime=None):
    """
    Applies the named weighted procedure to (P, W).

    Fold-aware procedures (holm, sidak, ihwc_storey) use ``partition``; the
    BH family ignores it. For ihwc_storey the weights are divided by the
    per-fold Storey estimate before the censored BH step, and the estimates
    are recorded in ``parameters['pi0']``.
    """
    name = codes.procedure(procedure)
    if name is None:
        raise errors.InvalidConfig('unknown procedure %r' % (procedure,))

    if name == 'bonferroni':
        return weighted_bonferroni(pvalues, weights, alpha)
    if name == 'k_bonferroni':
        return k_bonferroni(pvalues, weights, alpha, k)
    if name == 'holm':
        return weighted_holm(pvalues, weights, alpha, partition)
    if name == 'sidak':
        return weighted_sidak(pvalues, weights, alpha, partition)
    if name == 'bh':
        return weighted_bh(pvalues, weights, alpha)
    if name == 'by':
        return weighted_bh(pvalues, weights, alpha,
                           reshaping=ReshapingFunction.harmonic(len(pvalues)))

    tau = codes.DEFAULT_TAU if tau is None else tau
    if name == 'ihwc':
        return weighted_bh(pvalues, weights, alpha, censor_tau=tau)

    tau_prime = codes.DEFAULT_TAU_PRIME if tau_prime is None else tau_prime
    adjusted, pi0 = storey_weights(pvalues, weights, partition, tau_prime, tau)
    outcome = weighted_bh(pvalues, adjusted, alpha, censor_tau=tau)
    outcome.procedure_id = 'ihwc_storey'
    outcome.parameters.update(tau_prime=tau_prime, pi0=pi0)
    return outcome


__all__ = [
    'ReshapingFunction',
    'TestOutcome',
    'apply_procedure',
    'k_bonferroni',
    'storey_pi0',
    'storey_weights',
    'weighted_bh',
    'weighted_bonferroni',
    'weighted_holm',
    'weighted_sidak',
]
