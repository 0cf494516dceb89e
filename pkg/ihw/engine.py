###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Cross-weighting

    split     the hypotheses into K folds
    learn     a weight function for fold k from the p-values outside fold k
              and all covariates
    normalize the weights of every fold to mean one
    test      all (P, W) jointly with the configured weighted procedure

With B > 1 the first three steps are repeated over B random splits and the
weights are averaged before testing.
"""

import logging

import numpy as np

from .core import codes
from .core import errors
from .core import wrappers
from .core import _core
from . import hypotheses
from .estimation import learner
from .procedures import weighted

log = logging.getLogger(__name__)

COLUMN = 'column'
FOLD_STRATEGIES = (COLUMN, hypotheses.USER_SUPPLIED, hypotheses.RANDOM)


class IhwConfig(wrappers.ObjectWrapper):
    """
    :ivar alpha: nominal level in (0, 1)
    :ivar procedure: procedure id, see ``codes.PROCEDURE_MAP``
    :ivar k: k of k-Bonferroni
    :ivar tau: censoring threshold (ihwc variants only)
    :ivar tau_prime: Storey threshold (ihwc_storey only)
    :ivar K: number of outer folds
    :ivar fold_strategy: 'column' (user supplied labels) or 'random'
    :ivar seed: seed of the random split and of the inner cross-validation
    :ivar B: number of random splits whose weights are averaged
    :ivar learner: LearnerConfig; its alpha, criterion and censor_tau are
        derived from the procedure
    """

    def __init__(self, alpha=codes.DEFAULT_ALPHA, procedure='bh', k=1,
                 tau=None, tau_prime=None, K=None,
                 fold_strategy=hypotheses.RANDOM, seed=None, B=1,
                 learner=None):
        super(IhwConfig, self).__init__(
            alpha=alpha, procedure=procedure, k=k, tau=tau,
            tau_prime=tau_prime, K=K, fold_strategy=fold_strategy, seed=seed,
            B=B, learner=learner if learner is not None else learner_config())

    @property
    def procedure_id(self):
        return codes.procedure(self.procedure)

    @property
    def censored(self):
        return codes.PROCEDURE_MAP[self.procedure_id]['censored']

    @property
    def censor_tau(self):
        """ The censoring threshold in force, None for uncensored procedures """
        if not self.censored:
            return None
        return codes.DEFAULT_TAU if self.tau is None else float(self.tau)

    @property
    def storey_tau_prime(self):
        if self.procedure_id != 'ihwc_storey':
            return None
        if self.tau_prime is None:
            return codes.DEFAULT_TAU_PRIME
        return float(self.tau_prime)

    def validate(self):
        _core.check_level(self.alpha)
        name = self.procedure_id
        if name is None:
            raise errors.InvalidConfig('unknown procedure %r' % (self.procedure,))

        if self.tau is not None and not self.censored:
            raise errors.ConfigMismatch(
                'tau only applies to the censored procedures, not %s' % name)
        if self.tau_prime is not None and name != 'ihwc_storey':
            raise errors.ConfigMismatch(
                'tau_prime only applies to ihwc_storey, not %s' % name)
        if self.censored:
            _core.check_level(self.censor_tau, name='tau')
        if name == 'ihwc_storey':
            tau_prime = self.storey_tau_prime
            if not self.censor_tau <= tau_prime < 1.0:
                raise errors.InvalidTauPrime(tau_prime, self.censor_tau)

        if int(self.k) < 1:
            raise errors.InvalidConfig('k must be at least 1, got %r' % (self.k,))
        if int(self.k) != 1 and name != 'k_bonferroni':
            raise errors.ConfigMismatch('k only applies to k_bonferroni')

        if self.fold_strategy not in FOLD_STRATEGIES:
            raise errors.InvalidConfig(
                'unknown fold strategy %r' % (self.fold_strategy,))
        if int(self.B) < 1:
            raise errors.InvalidConfig('B must be at least 1, got %r' % (self.B,))
        if int(self.B) > 1:
            if self.fold_strategy != hypotheses.RANDOM:
                raise errors.ConfigMismatch(
                    'averaging over B > 1 splits needs random folds')
            if codes.PROCEDURE_MAP[name]['fold_aware']:
                raise errors.ConfigMismatch(
                    '%s needs a single partition, it cannot run on weights '
                    'averaged over B > 1 splits' % name)
        self.learner.validate()
        return self

    def learning_level(self, m):
        """
        (alpha, criterion) the weights are learned for: BY learns at
        alpha / H_m, k-Bonferroni at k alpha, FWER procedures against the
        expected number of false rejections.
        """
        name = self.procedure_id
        if name == 'by':
            return self.alpha / _core.harmonic_number(m), learner.FDR
        if name == 'k_bonferroni':
            return int(self.k) * self.alpha, learner.FWER
        if codes.criterion(name) == 'fwer':
            return self.alpha, learner.FWER
        return self.alpha, learner.FDR


def learner_config(**kwargs):
    return learner.LearnerConfig(**kwargs)


class IhwResult(wrappers.ObjectWrapper):
    """
    :ivar weights: WeightVector, averaged over the splits when B > 1
    :ivar outcome: TestOutcome of the weighted procedure
    :ivar partition: the FoldPartition (the last one when B > 1)
    :ivar per_fold_threshold_functions: {fold: WeightFunction}, one dict per
        split when B > 1
    :ivar diagnostics: seeds, bins, chosen lambda and fallback flags per fold
    """


def _draw_seed(what):
    seed = int(np.random.SeedSequence().generate_state(1)[0])
    log.info('No %s seed given, drew seed %d', what, seed)
    return seed


def _fold_learner_config(config, m):
    alpha, criterion = config.learning_level(m)
    base = config.learner
    return learner.LearnerConfig(
        J=base.J, lambda_grid=base.lambda_grid, alpha=alpha,
        K_inner=base.K_inner, censor_tau=config.censor_tau,
        criterion=criterion, solver=base.solver)


def cross_weight(table, bins, partition, config, seed):
    """
    Learns and normalizes the weights of one split.

    Returns (WeightVector, {fold: WeightFunction}). The inner cross-validation
    of fold k is seeded from (seed, k), so the result does not depend on the
    order in which folds are processed.
    """
    lconfig = _fold_learner_config(config, table.m)
    raw = np.empty(table.m)
    functions = {}
    for fold, idx in partition:
        heldout = partition.assignments != fold
        function = learner.learn_weight_function(
            table.pvalues[heldout], bins.bin_of[heldout], bins, lconfig,
            inner_seed=np.random.SeedSequence(seed, spawn_key=(fold,)),
            target_bins=bins.bin_of[idx], n_tests=table.m)
        raw[idx] = function(bins.bin_of[idx])
        functions[fold] = function
        if function.uniform_fallback:
            log.warning('Fold %d: no inner discoveries, weights set to 1', fold)
        else:
            log.info('Fold %d: lambda = %g', fold, function.lambda_)
    return hypotheses.normalize_weights(raw, partition), functions


def _fold_diagnostics(functions):
    return dict(
        lambdas=dict((f, fn.lambda_) for f, fn in functions.items()),
        uniform_fallback=dict((f, fn.uniform_fallback) for f, fn in functions.items()),
        empty_bins=dict((f, fn.empty_bins) for f, fn in functions.items()))


def _bin_diagnostics(bins):
    return dict(J=bins.J, kind=bins.bin_kind, edges=bins.bin_edges,
                levels=bins.levels, counts=bins.counts)


def average_weights(vectors):
    """ Elementwise mean of weight vectors; only the budget sum W = m holds """
    stacked = np.vstack([np.asarray(v, dtype=float) for v in vectors])
    return hypotheses.WeightVector(stacked.mean(axis=0)).check()


def _split_seeds(config):
    seed = config.seed if config.seed is not None else _draw_seed('split')
    states = np.random.SeedSequence(seed).generate_state(int(config.B))
    return seed, [int(s) for s in states]


def _averaged_splits(table, bins, config):
    seed, split_seeds = _split_seeds(config)
    vectors, splits, partition = [], [], None
    for b, split_seed in enumerate(split_seeds):
        partition = hypotheses.split_folds(table, config.K, hypotheses.RANDOM,
                                           split_seed)
        vector, functions = cross_weight(table, bins, partition, config,
                                         split_seed)
        vectors.append(vector)
        splits.append(functions)
        log.debug('Split %d of %d done (seed %d)', b + 1, len(split_seeds),
                  split_seed)
    return average_weights(vectors), splits, partition, seed, split_seeds


def average_weights_over_splits(table, config):
    config = config.validate()
    if config.fold_strategy != hypotheses.RANDOM:
        raise errors.ConfigMismatch('averaging over splits needs random folds')
    bins = learner.bin_covariate(table, config.learner.J)
    return _averaged_splits(table, bins, config)[0]


def _test(table, weights, partition, config):
    return weighted.apply_procedure(
        config.procedure_id, table.pvalues, np.asarray(weights), config.alpha,
        partition=partition, k=int(config.k), tau=config.censor_tau,
        tau_prime=config.storey_tau_prime)


def run_ihw(table, config):
    config = config.validate()
    bins = learner.bin_covariate(table, config.learner.J)
    log.info('IHW %s at alpha = %g on %d hypotheses, %d bins',
             config.procedure_id, config.alpha, table.m, bins.J)

    diagnostics = dict(bins=_bin_diagnostics(bins), tau=config.censor_tau,
                       tau_prime=config.storey_tau_prime,
                       learning_level=config.learning_level(table.m))

    if int(config.B) > 1:
        weights, splits, partition, seed, split_seeds = _averaged_splits(
            table, bins, config)
        functions = splits
        diagnostics.update(seed=seed, split_seeds=split_seeds,
                           splits=[_fold_diagnostics(f) for f in splits])
        outcome = _test(table, weights, None, config)
    else:
        strategy = config.fold_strategy
        if strategy == COLUMN:
            strategy = hypotheses.USER_SUPPLIED
        seed = config.seed
        if seed is None:
            seed = _draw_seed('fold' if strategy == hypotheses.RANDOM else 'learner')
        partition = hypotheses.split_folds(table, config.K, strategy, seed)
        weights, functions = cross_weight(table, bins, partition, config, seed)
        diagnostics.update(seed=seed, **_fold_diagnostics(functions))
        outcome = _test(table, weights, partition, config)

    if 'pi0' in outcome.parameters:
        diagnostics['pi0'] = outcome.parameters['pi0']
    log.info('%d discoveries', outcome.discoveries)
    return IhwResult(weights=weights, outcome=outcome, partition=partition,
                     per_fold_threshold_functions=functions,
                     diagnostics=diagnostics)


def run_unweighted(table, procedure, alpha, k=1, tau=None, tau_prime=None,
                   partition=None):
    """ The procedure with W = 1 everywhere, the baseline IHW never falls below """
    return weighted.apply_procedure(procedure, table.pvalues, np.ones(table.m),
                                    alpha, partition=partition, k=k, tau=tau,
                                    tau_prime=tau_prime)
