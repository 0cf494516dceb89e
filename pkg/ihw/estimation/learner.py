###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Weight learning from held-out p-values

The covariate is discretized into J bins. Within each bin the conditional
p-value distribution F(t | j) is estimated by the Grenander estimator, the
null proportion is taken to be 1, and the bin masses come from the covariates
of the fold that will receive the weights. The per-bin thresholds t_j then
solve the linear program

    maximize    sum_j mass_j F(t_j | j)
    subject to  sum_j mass_j (pi0_j t_j - alpha F(t_j | j)) <= 0     (FDR)
                or m sum_j mass_j pi0_j t_j <= alpha                   (FWER)
                a total variation (ordered bins) or deviation from
                uniformity (unordered bins) budget of lambda sum_j mass_j t_j

with F(t_j | j) replaced by epigraph variables z_j <= a_s t_j + b_s over the
Grenander segments s. lambda is picked by inner cross-validation on the
held-out folds; the thresholds are the raw weights of the bins.
"""

import logging
import math

import numpy as np

from ..core import codes
from ..core import errors
from ..core import wrappers
from ..core import _core
from .. import hypotheses
from ..procedures import weighted
from . import grenander
from . import lp as lp_solver

log = logging.getLogger(__name__)

ORDERED = 'ordered'
UNORDERED = 'unordered'

FDR = 'fdr'
FWER = 'fwer'


class BinnedCovariate(wrappers.ObjectWrapper):
    """
    :ivar J: number of bins
    :ivar bin_of: bin label in 1..J per hypothesis
    :ivar bin_kind: 'ordered' (numeric quantile bins) or 'unordered'
    :ivar bin_edges: J - 1 left-closed interior edges (ordered kind only)
    :ivar levels: category label of each bin (unordered kind only)
    """

    def __init__(self, J, bin_of, bin_kind, bin_edges=None, levels=None):
        super(BinnedCovariate, self).__init__(
            J=int(J), bin_of=np.asarray(bin_of, dtype=int), bin_kind=bin_kind,
            bin_edges=bin_edges, levels=levels)

    @property
    def counts(self):
        return np.bincount(self.bin_of, minlength=self.J + 1)[1:]


def _quantile_edges(values, J):
    """
    J - 1 distinct data values e_1 < ... < e_{J-1}; bin j is [e_{j-1}, e_j).
    e_j is the smallest data value with at least j m / J observations below
    it, pushed up where ties would leave a bin empty.
    """
    ordered = np.sort(values)
    distinct = np.unique(ordered)
    below = np.searchsorted(ordered, distinct, side='left')
    m = len(values)

    edges = []
    previous = 0
    for j in range(1, J):
        k = int(np.searchsorted(below, j * m / float(J) - 1e-9, side='left'))
        k = max(k, previous + 1)
        k = min(k, len(distinct) - (J - j))
        edges.append(distinct[k])
        previous = k
    return np.asarray(edges, dtype=float)


def bin_covariate(table, J=None):
    if table.covariate_kind == hypotheses.CATEGORICAL:
        levels = sorted(set(table.covariates.tolist()))
        if J is not None and int(J) != len(levels):
            raise errors.InvalidConfig(
                'categorical covariate has %d levels but J = %d'
                % (len(levels), J))
        lookup = dict((level, j + 1) for j, level in enumerate(levels))
        bin_of = np.array([lookup[x] for x in table.covariates], dtype=int)
        return BinnedCovariate(len(levels), bin_of, UNORDERED, levels=levels)

    if J is None:
        J = codes.default_bins(table.m)
    J = int(J)
    if J < 1:
        raise errors.InvalidConfig('need at least one bin, got %d' % J)
    values = np.asarray(table.covariates, dtype=float)
    distinct = len(np.unique(values))
    if J > distinct:
        raise errors.TooManyBins(J, distinct)
    if J == 1:
        return BinnedCovariate(1, np.ones(table.m, dtype=int), ORDERED,
                               bin_edges=np.zeros(0))
    edges = _quantile_edges(values, J)
    bin_of = np.searchsorted(edges, values, side='right') + 1
    return BinnedCovariate(J, bin_of, ORDERED, bin_edges=edges)


class ConditionalModel(wrappers.ObjectWrapper):
    """
    :ivar per_bin_cdf: list of J GrenanderCdf, estimates of F(t | j)
    :ivar per_bin_pi0: null proportion per bin (1 unless set otherwise)
    :ivar per_bin_mass: empirical covariate measure of the target fold
    :ivar fallback_bins: bins (1-based) estimated from the pooled p-values
    """

    def __init__(self, per_bin_cdf, per_bin_pi0, per_bin_mass, fallback_bins=()):
        super(ConditionalModel, self).__init__(
            per_bin_cdf=list(per_bin_cdf),
            per_bin_pi0=np.asarray(per_bin_pi0, dtype=float),
            per_bin_mass=np.asarray(per_bin_mass, dtype=float),
            fallback_bins=list(fallback_bins))

    @property
    def J(self):
        return len(self.per_bin_cdf)


def censor(pvalues, tau):
    """ p-values <= tau become 0 """
    p = _core.as_vector(pvalues)
    if tau is None:
        return p
    return np.where(p <= tau, 0.0, p)


def _bin_mass(bin_labels, J):
    counts = np.bincount(np.asarray(bin_labels, dtype=int), minlength=J + 1)[1:]
    total = counts.sum()
    if total == 0:
        return np.full(J, 1.0 / J)
    return counts / float(total)


def estimate_conditional_model(heldout_pvalues, heldout_bins, bins,
                               target_bins=None, censor_tau=None):
    """
    Grenander estimate of F(t | j) per bin from the held-out p-values.

    Bins without held-out p-values reuse the pooled estimate and are listed in
    ``fallback_bins``. The bin masses come from ``target_bins`` (the bins of
    the fold being weighted) or, failing that, from the held-out bins.
    """
    p = censor(heldout_pvalues, censor_tau)
    labels = np.asarray(heldout_bins, dtype=int)
    _core.check_same_length(p, labels)
    if len(p) == 0:
        raise errors.EmptyInput('held-out p-values')

    J = bins.J
    pooled = None
    cdfs, fallback = [], []
    for j in range(1, J + 1):
        in_bin = p[labels == j]
        if len(in_bin):
            cdfs.append(grenander.fit_grenander(in_bin))
            continue
        if pooled is None:
            pooled = grenander.fit_grenander(p)
        log.warning('Bin %d has no held-out p-values, using the pooled estimate', j)
        cdfs.append(pooled)
        fallback.append(j)

    mass = _bin_mass(labels if target_bins is None else target_bins, J)
    return ConditionalModel(cdfs, np.ones(J), mass, fallback)


class ThresholdFunction(wrappers.ObjectWrapper):
    """ One rejection threshold t_j in [0, 1] per bin """

    def __init__(self, t, objective_value=None):
        super(ThresholdFunction, self).__init__(
            t=np.clip(np.asarray(t, dtype=float), 0.0, 1.0),
            objective_value=objective_value)

    def __call__(self, bin_labels):
        return self.t[np.asarray(bin_labels, dtype=int) - 1]


def build_threshold_lp(model, alpha, lam=codes.UNREGULARIZED, bin_kind=ORDERED,
                       criterion=FDR, n_tests=None):
    """
    Variables: t_1..t_J, z_1..z_J, then the absolute-value split variables
    d of the regularization budget.
    """
    J = model.J
    mass = model.per_bin_mass
    pi0 = model.per_bin_pi0
    regularized = not math.isinf(lam) and J > 1
    n_d = 0
    if regularized:
        n_d = J - 1 if bin_kind == ORDERED else J
    n = 2 * J + n_d

    def row():
        return np.zeros(n)

    objective = row()
    objective[J:2 * J] = mass
    bounds = [(0.0, 1.0)] * J + [(0.0, math.inf)] * (J + n_d)
    program = lp_solver.LinearProgram(objective, bounds=bounds)

    for j, cdf in enumerate(model.per_bin_cdf):
        for slope, intercept in cdf.segments():
            a = row()
            a[J + j] = 1.0
            a[j] = -slope
            program.add_constraint(a, '<=', intercept)

    a = row()
    if criterion == FDR:
        a[:J] = mass * pi0
        a[J:2 * J] = -alpha * mass
        program.add_constraint(a, '<=', 0.0)
    elif criterion == FWER:
        if not n_tests:
            raise errors.InvalidConfig('the FWER criterion needs n_tests')
        a[:J] = n_tests * mass * pi0
        program.add_constraint(a, '<=', alpha)
    else:
        raise errors.InvalidConfig('unknown criterion %r' % (criterion,))

    if regularized:
        budget = row()
        if bin_kind == ORDERED:
            for j in range(1, J):
                d = 2 * J + j - 1
                for sign in (1.0, -1.0):
                    a = row()
                    a[j] = sign
                    a[j - 1] = -sign
                    a[d] = -1.0
                    program.add_constraint(a, '<=', 0.0)
                budget[d] = 1.0
        else:
            for j in range(J):
                d = 2 * J + j
                for sign in (1.0, -1.0):
                    a = row()
                    a[:J] = -sign / J
                    a[j] += sign
                    a[d] = -1.0
                    program.add_constraint(a, '<=', 0.0)
                budget[d] = 1.0
        budget[:J] -= lam * mass
        program.add_constraint(budget, '<=', 0.0)

    return program


def solve_thresholds(model, alpha, lam=codes.UNREGULARIZED, bin_kind=ORDERED,
                     criterion=FDR, n_tests=None, solver='simplex'):
    program = build_threshold_lp(model, alpha, lam, bin_kind, criterion, n_tests)
    solution = lp_solver.solve_lp(program, method=solver)
    if not solution.optimal:
        # t = z = 0 is always feasible and the objective is bounded
        raise errors.NumericalFailure('threshold LP reported %s' % solution.status)
    return ThresholdFunction(solution.primal[:model.J], solution.objective_value)


class LearnerConfig(wrappers.ObjectWrapper):
    def __init__(self, J=None, lambda_grid=codes.DEFAULT_LAMBDA_GRID,
                 alpha=codes.DEFAULT_ALPHA, K_inner=codes.DEFAULT_INNER_FOLDS,
                 censor_tau=None, criterion=FDR, solver='simplex'):
        super(LearnerConfig, self).__init__(
            J=J, lambda_grid=tuple(float(x) for x in lambda_grid), alpha=alpha,
            K_inner=K_inner, censor_tau=censor_tau, criterion=criterion,
            solver=solver)

    def validate(self):
        if self.J is not None and int(self.J) < 1:
            raise errors.InvalidConfig('J must be at least 1, got %r' % self.J)
        _core.check_level(self.alpha)
        if not self.lambda_grid:
            raise errors.InvalidConfig('the lambda grid is empty')
        if any(math.isnan(x) or x < 0 for x in self.lambda_grid):
            raise errors.InvalidConfig(
                'lambda candidates must be >= 0, got %r' % (self.lambda_grid,))
        if int(self.K_inner) < 2:
            raise errors.InvalidConfig('K_inner must be at least 2')
        if self.censor_tau is not None:
            _core.check_level(self.censor_tau, name='tau')
        if self.criterion not in (FDR, FWER):
            raise errors.InvalidConfig('unknown criterion %r' % (self.criterion,))
        if self.solver not in ('simplex', 'highs'):
            raise errors.InvalidConfig('unknown LP solver %r' % (self.solver,))
        return self

    def sorted_lambdas(self):
        """ Ascending, so ties resolve toward smaller lambda """
        return sorted(set(self.lambda_grid))


class WeightFunction(wrappers.ObjectWrapper):
    """
    Learned raw weights per bin.

    :ivar raw_weights: W~(j), the thresholds t_j or all ones on fallback
    :ivar lambda_: chosen regularization (None on fallback)
    :ivar scores: mean inner discoveries per lambda
    :ivar uniform_fallback: True when no lambda made any inner discovery
    :ivar empty_bins: bins estimated from pooled p-values in the final fit
    """

    def __call__(self, bin_labels):
        return self.raw_weights[np.asarray(bin_labels, dtype=int) - 1]


def _score(pvalues, weights, config, n_tests):
    if config.criterion == FWER:
        outcome = weighted.weighted_bonferroni(pvalues, weights, config.alpha)
    else:
        outcome = weighted.weighted_bh(pvalues, weights, config.alpha,
                                       censor_tau=config.censor_tau)
    return outcome.discoveries


def _unit_mean(raw):
    total = raw.sum()
    if total == 0:
        return np.ones_like(raw)
    return len(raw) * raw / total


def learn_weight_function(heldout_pvalues, heldout_bins, bins, config,
                          inner_seed=None, target_bins=None, n_tests=None):
    """
    Nested cross-validation over ``config.lambda_grid`` followed by a refit on
    all held-out p-values with the chosen lambda.

    Candidates are scored by the mean number of discoveries that the implied
    weights make on the inner held-out split; ties go to the smaller lambda.
    When every candidate makes zero discoveries the raw weights are uniform.
    """
    config.validate()
    p = censor(heldout_pvalues, config.censor_tau)
    labels = np.asarray(heldout_bins, dtype=int)
    _core.check_same_length(p, labels)
    lambdas = config.sorted_lambdas()
    n = len(p)

    def fallback(scores, empty=()):
        log.info('No inner discoveries for any lambda, using uniform weights')
        return WeightFunction(raw_weights=np.ones(bins.J), lambda_=None,
                              scores=scores, uniform_fallback=True,
                              empty_bins=list(empty))

    if n < 2:
        return fallback({})

    K_inner = min(int(config.K_inner), n)
    rng = np.random.default_rng(inner_seed)
    inner = np.empty(n, dtype=int)
    inner[rng.permutation(n)] = np.arange(n) % K_inner

    totals = dict((lam, 0.0) for lam in lambdas)
    for k in range(K_inner):
        test = inner == k
        train = ~test
        model = estimate_conditional_model(p[train], labels[train], bins,
                                           target_bins=labels[test])
        inner_tests = int(test.sum())
        for lam in lambdas:
            thresholds = solve_thresholds(model, config.alpha, lam, bins.bin_kind,
                                          config.criterion, inner_tests,
                                          config.solver)
            weights = _unit_mean(thresholds(labels[test]))
            totals[lam] += _score(p[test], weights, config, inner_tests)

    scores = dict((lam, totals[lam] / K_inner) for lam in lambdas)
    best = max(scores.values())
    if best <= 0:
        return fallback(scores)
    chosen = min(lam for lam in lambdas if scores[lam] == best)

    model = estimate_conditional_model(p, labels, bins, target_bins=target_bins)
    thresholds = solve_thresholds(model, config.alpha, chosen, bins.bin_kind,
                                  config.criterion, n_tests or n, config.solver)
    log.info('Chose lambda = %g (%.2f inner discoveries)', chosen, best)
    return WeightFunction(raw_weights=thresholds.t, lambda_=chosen,
                          scores=scores, uniform_fallback=False,
                          empty_bins=model.fallback_bins,
                          objective_value=thresholds.objective_value)
