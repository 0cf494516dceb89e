###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Conditional two-groups data generators

    X_i ~ covariate law,  H_i | X_i ~ Bernoulli(1 - pi0(X_i))
    Z_i = sqrt(N(X_i)) mu(X_i) H_i + noise_i,  P_i = 1 - Phi(Z_i)

The noise is i.i.d. standard normal, or equicorrelated within contiguous
blocks of K folds (sqrt(rho) F_l + sqrt(1 - rho) e_i), in which case the fold
labels are part of the generated table.
"""

import configparser
import logging
import math

import numpy as np
from scipy import stats

from ..core import codes
from ..core import errors
from ..core import wrappers
from .. import hypotheses

log = logging.getLogger(__name__)

UNIFORM = 'uniform'
CATEGORICAL = 'categorical'

INDEPENDENT = 'independent'
FOLD_BLOCK = 'fold_block'


class PiecewiseConstant(wrappers.ObjectWrapper):
    """
    Step function of the covariate: numeric covariates use ``breaks`` on
    [0, 1] (value k on [breaks[k-1], breaks[k])), categorical covariates one
    value per level.
    """

    def __init__(self, values, breaks=None, levels=None):
        values = np.atleast_1d(np.asarray(values, dtype=float))
        breaks = np.zeros(0) if breaks is None else np.asarray(breaks, dtype=float)
        if levels is None and len(values) != len(breaks) + 1:
            raise errors.InvalidConfig(
                '%d values need %d breaks, got %d'
                % (len(values), len(values) - 1, len(breaks)))
        if len(breaks) and np.any(np.diff(breaks) <= 0):
            raise errors.InvalidConfig('breaks must increase: %r' % breaks.tolist())
        if levels is not None:
            levels = list(levels)
            if len(values) == 1:
                values = np.repeat(values, len(levels))
            if len(values) != len(levels):
                raise errors.InvalidConfig(
                    '%d levels but %d values' % (len(levels), len(values)))
        super(PiecewiseConstant, self).__init__(values=values, breaks=breaks,
                                                levels=levels)

    def __call__(self, x):
        if self.levels is not None:
            lookup = dict(zip(self.levels, self.values.tolist()))
            return np.array([lookup[v] for v in x], dtype=float)
        x = np.asarray(x, dtype=float)
        return self.values[np.searchsorted(self.breaks, x, side='right')]

    @classmethod
    def constant(cls, value, levels=None):
        return cls([value], levels=levels)


def _step(value, breaks=None, levels=None):
    if isinstance(value, PiecewiseConstant):
        return value
    return PiecewiseConstant(value, breaks, levels)


class Scenario(wrappers.ObjectWrapper):
    """
    :ivar m: hypotheses per replicate
    :ivar pi0: PiecewiseConstant null proportion
    :ivar mu: PiecewiseConstant effect size
    :ivar n: PiecewiseConstant sample size (>= 1)
    :ivar covariate_law: 'uniform' on [0, 1] or 'categorical'
    :ivar levels: category labels (categorical only)
    :ivar level_probs: category probabilities (categorical only)
    :ivar dependence: 'independent' or 'fold_block'
    :ivar rho: within-fold correlation under fold_block
    :ivar K: number of dependence blocks, also the fold labels
    """

    def __init__(self, name='scenario', m=2000, pi0=1.0, mu=2.5, n=1,
                 covariate_law=UNIFORM, levels=None, level_probs=None,
                 dependence=INDEPENDENT, rho=codes.DEFAULT_RHO, K=None,
                 pi0_breaks=None, mu_breaks=None, n_breaks=None):
        if covariate_law == CATEGORICAL and levels is not None:
            levels = [str(level) for level in levels]
            if level_probs is None:
                level_probs = [1.0 / len(levels)] * len(levels)
        else:
            levels = None
        super(Scenario, self).__init__(
            name=name, m=int(m), covariate_law=covariate_law, levels=levels,
            level_probs=None if level_probs is None else np.asarray(level_probs, dtype=float),
            dependence=dependence, rho=float(rho),
            K=int(K) if K is not None else None,
            pi0=_step(pi0, pi0_breaks, levels), mu=_step(mu, mu_breaks, levels),
            n=_step(n, n_breaks, levels))

    def validate(self):
        if self.m < 1:
            raise errors.ScenarioError('m', 'needs at least one hypothesis', self.name)
        if np.any((self.pi0.values < 0) | (self.pi0.values > 1)):
            raise errors.ScenarioError('pi0', 'values must lie in [0, 1]', self.name)
        if np.any(self.n.values < 1):
            raise errors.ScenarioError('n', 'sample sizes must be >= 1', self.name)
        if self.covariate_law == CATEGORICAL:
            if not self.levels:
                raise errors.ScenarioError('levels', 'categorical law needs levels',
                                           self.name)
            if len(self.level_probs) != len(self.levels) \
                    or abs(self.level_probs.sum() - 1.0) > 1e-9 \
                    or np.any(self.level_probs < 0):
                raise errors.ScenarioError(
                    'level_probs', 'need one probability per level summing to 1',
                    self.name)
        elif self.covariate_law != UNIFORM:
            raise errors.ScenarioError('covariate', 'unknown law %r'
                                       % (self.covariate_law,), self.name)
        if self.dependence not in (INDEPENDENT, FOLD_BLOCK):
            raise errors.ScenarioError('dependence', 'unknown dependence %r'
                                       % (self.dependence,), self.name)
        if self.dependence == FOLD_BLOCK:
            if not self.K or self.K < 2 or self.K > self.m:
                raise errors.ScenarioError('folds', 'fold_block needs 2 <= folds <= m',
                                           self.name)
            if not 0.0 <= self.rho < 1.0:
                raise errors.ScenarioError('rho', 'must lie in [0, 1)', self.name)
        return self

    def draw_covariates(self, rng):
        if self.covariate_law == CATEGORICAL:
            picks = rng.choice(len(self.levels), size=self.m, p=self.level_probs)
            return np.asarray(self.levels, dtype=object)[picks]
        return rng.random(self.m)

    def shift(self, x):
        """ sqrt(N(x)) mu(x), the mean of Z under the alternative """
        return np.sqrt(self.n(x)) * self.mu(x)

    def alternative_cdf(self, t, x):
        """ F_alt(t | x) = 1 - Phi(Phi^{-1}(1 - t) - sqrt(N) mu) """
        return stats.norm.sf(stats.norm.isf(t) - self.shift(x))

    def true_density(self, t, x):
        """ f(t | x) = pi0(x) + (1 - pi0(x)) f_alt(t | x) """
        t = np.asarray(t, dtype=float)
        s = self.shift(x)
        z = stats.norm.isf(t)
        with np.errstate(over='ignore', invalid='ignore'):
            alternative = np.exp(s * z - 0.5 * s * s)
        alternative = np.where(s == 0, 1.0, alternative)
        pi0 = self.pi0(x)
        return pi0 + (1.0 - pi0) * alternative

    def true_lfdr(self, t, x):
        density = self.true_density(t, x)
        with np.errstate(divide='ignore'):
            return np.where(np.isinf(density), 0.0, self.pi0(x) / density)


def block_folds(m, K):
    """ Contiguous fold labels 1..K with sizes differing by at most one """
    return np.arange(m) * K // m + 1


def generate_replicate(scenario, seed):
    """
    One data set from ``scenario``; returns (HypothesisTable, truth) with
    truth[i] = 1 for alternatives.
    """
    rng = np.random.default_rng(seed)
    m = scenario.m
    x = scenario.draw_covariates(rng)
    truth = (rng.random(m) >= scenario.pi0(x)).astype(int)

    folds = None
    if scenario.dependence == FOLD_BLOCK:
        folds = block_folds(m, scenario.K)
        factor = rng.standard_normal(scenario.K)
        noise = (math.sqrt(scenario.rho) * factor[folds - 1]
                 + math.sqrt(1.0 - scenario.rho) * rng.standard_normal(m))
    else:
        noise = rng.standard_normal(m)

    z = scenario.shift(x) * truth + noise
    pvalues = stats.norm.sf(z)
    table = hypotheses.HypothesisTable.from_arrays(pvalues, x, folds)
    return table, truth


SCENARIO_KEYS = ('m', 'pi0', 'pi0_breaks', 'mu', 'mu_breaks', 'n', 'n_breaks',
                 'covariate', 'levels', 'level_probs', 'dependence', 'rho',
                 'folds')


def _floats(section, key, text):
    try:
        return [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise errors.ScenarioError(key, 'expected numbers, got %r' % text, section)


def _scenario_from_section(name, items):
    unknown = [key for key in items if key not in SCENARIO_KEYS]
    if unknown:
        raise errors.ScenarioError(unknown[0], 'unknown key', name)

    options = dict(name=name)
    if 'm' in items:
        try:
            options['m'] = int(items['m'])
        except ValueError:
            raise errors.ScenarioError('m', 'expected an integer', name)
    for key in ('pi0', 'mu', 'n'):
        if key in items:
            options[key] = _floats(name, key, items[key])
        if key + '_breaks' in items:
            options[key + '_breaks'] = _floats(name, key + '_breaks',
                                               items[key + '_breaks'])
    if 'covariate' in items:
        options['covariate_law'] = items['covariate'].strip()
    if 'levels' in items:
        options['levels'] = [s.strip() for s in items['levels'].split(',') if s.strip()]
    if 'level_probs' in items:
        options['level_probs'] = _floats(name, 'level_probs', items['level_probs'])
    if 'dependence' in items:
        options['dependence'] = items['dependence'].strip().replace('-', '_')
    if 'rho' in items:
        options['rho'] = _floats(name, 'rho', items['rho'])[0]
    if 'folds' in items:
        try:
            options['K'] = int(items['folds'])
        except ValueError:
            raise errors.ScenarioError('folds', 'expected an integer', name)

    try:
        scenario = Scenario(**options)
    except errors.InvalidConfig as e:
        raise errors.ScenarioError('breaks', str(e), name)
    return scenario.validate()


def parse_scenarios(text):
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as e:
        raise errors.ScenarioError('syntax', str(e))
    if not parser.sections():
        raise errors.ScenarioError('section', 'no [scenario] sections found')
    return [_scenario_from_section(name, dict(parser.items(name)))
            for name in parser.sections()]


def load_scenarios(path):
    """ Scenarios from an INI file, one [section] per scenario """
    with open(path) as f:
        return parse_scenarios(f.read())
