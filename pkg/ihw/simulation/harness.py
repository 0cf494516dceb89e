###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Monte Carlo estimates of FDR, FWER, k-FWER and power

Replicate r draws its data and its method seed from
SeedSequence(seed, spawn_key=(r,)), so any subset of replicates can be
recomputed on its own.
"""

import logging
import math

import numpy as np

from ..core import codes
from ..core import errors
from ..core import wrappers
from ..core import _core
from ..core import tabular
from .. import engine
from .. import lfdr
from ..estimation import learner
from . import scenarios

log = logging.getLogger(__name__)

REPORT_COLUMNS = ['scenario', 'procedure', 'alpha', 'fdr', 'fdr_se', 'fwer',
                  'fwer_se', 'mean_discoveries', 'reps']


class ErrorReport(wrappers.ObjectWrapper):
    """
    :ivar fdr: mean false discovery proportion V / max(R, 1)
    :ivar fwer: fraction of replicates with V >= 1
    :ivar kfwer: fraction of replicates with V >= k
    :ivar mean_discoveries: mean R
    :ivar mean_true_discoveries: mean R - V
    :ivar power: mean (R - V) / #alternatives over replicates with alternatives
    :ivar *_se: sample standard deviation / sqrt(reps)
    """

    def row(self):
        return dict((column, getattr(self, column)) for column in REPORT_COLUMNS)


def _mean_se(values):
    values = np.asarray(values, dtype=float)
    if len(values) == 0:
        return math.nan, math.nan
    if len(values) < 2:
        return float(values.mean()), 0.0
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(len(values)))


def replicate_seeds(seed, rep):
    """ (data seed, method seed) of replicate ``rep`` """
    data, method = np.random.SeedSequence(seed, spawn_key=(rep,)).spawn(2)
    return data, int(method.generate_state(1)[0])


def estimate_error_rates(scenario, method, reps, alpha, seed, k=1,
                         scenario_name=None, procedure_name=None):
    """
    Runs ``method(table, alpha, seed)`` on ``reps`` replicates of
    ``scenario``; the method returns a TestOutcome or a boolean rejection
    array.
    """
    if int(reps) < 1:
        raise errors.InvalidConfig('reps must be at least 1, got %r' % (reps,))
    alpha = _core.check_level(alpha)
    scenario.validate()

    fdp, any_false, k_false, discoveries, true_discoveries, power = \
        [], [], [], [], [], []
    for rep in range(int(reps)):
        data_seed, method_seed = replicate_seeds(seed, rep)
        table, truth = scenarios.generate_replicate(scenario, data_seed)
        result = method(table, alpha, method_seed)
        rejected = np.asarray(getattr(result, 'rejected', result), dtype=bool)

        R = int(rejected.sum())
        V = int((rejected & (truth == 0)).sum())
        alternatives = int(truth.sum())
        fdp.append(V / float(max(R, 1)))
        any_false.append(V >= 1)
        k_false.append(V >= k)
        discoveries.append(R)
        true_discoveries.append(R - V)
        if alternatives:
            power.append((R - V) / float(alternatives))

    fdr, fdr_se = _mean_se(fdp)
    fwer, fwer_se = _mean_se(any_false)
    kfwer, kfwer_se = _mean_se(k_false)
    mean_r, mean_r_se = _mean_se(discoveries)
    mean_s, _ = _mean_se(true_discoveries)
    mean_power, power_se = _mean_se(power)

    name = procedure_name or getattr(method, 'name', None) or \
        getattr(method, '__name__', 'method')
    report = ErrorReport(
        scenario=scenario_name or scenario.name, procedure=name, alpha=alpha,
        reps=int(reps), k=int(k), fdr=fdr, fdr_se=fdr_se, fwer=fwer,
        fwer_se=fwer_se, kfwer=kfwer, kfwer_se=kfwer_se,
        mean_discoveries=mean_r, mean_discoveries_se=mean_r_se,
        mean_true_discoveries=mean_s, power=mean_power, power_se=power_se)
    log.info('%s on %s: FDR %.4f (%.4f), FWER %.4f (%.4f), R %.1f over %d reps',
             report.procedure, report.scenario, fdr, fdr_se, fwer, fwer_se,
             mean_r, reps)
    return report


class Method(wrappers.ObjectWrapper):
    """
    A named procedure closure ``method(table, alpha, seed) -> TestOutcome``.

    IHW methods learn weights by cross-weighting on the user supplied fold
    labels when the table has them and on K random folds otherwise.
    """

    def __call__(self, table, alpha, seed=None):
        if self.kind == 'oracle':
            values = self.scenario.true_lfdr(table.pvalues, table.covariates)
            return lfdr.cfdr_procedure(values, alpha)
        if self.kind == 'unweighted':
            return engine.run_unweighted(table, self.procedure, alpha, k=self.k,
                                         tau=self.tau, tau_prime=self.tau_prime)

        strategy = engine.COLUMN if table.fold_labels is not None else 'random'
        config = engine.IhwConfig(
            alpha=alpha, procedure=self.procedure, k=self.k, tau=self.tau,
            tau_prime=self.tau_prime,
            K=None if strategy == engine.COLUMN else self.K,
            fold_strategy=strategy, seed=seed,
            learner=learner.LearnerConfig(J=self.J, lambda_grid=self.lambda_grid,
                                          solver=self.solver))
        return engine.run_ihw(table, config).outcome


IHW_PREFIX = 'ihw-'


def make_method(name, K=codes.DEFAULT_FOLDS, J=None, k=1, tau=None,
                tau_prime=None, lambda_grid=codes.DEFAULT_LAMBDA_GRID,
                solver='simplex', scenario=None):
    """
    Unweighted methods: bonferroni, k-bonferroni, holm, sidak, bh, by.
    IHW methods: ihw-bonferroni, ihw-k-bonferroni, ihw-holm, ihw-sidak,
    ihw-bh, ihw-by, ihwc, ihwc-storey.
    oracle-cfdr: the Cfdr procedure on the true lfdr of ``scenario``.
    """
    key = name.strip().lower()
    if key == 'oracle-cfdr':
        if scenario is None:
            raise errors.InvalidConfig('oracle-cfdr needs the scenario')
        return Method(name=key, kind='oracle', scenario=scenario)

    if key.startswith(IHW_PREFIX):
        procedure, kind = codes.procedure(key[len(IHW_PREFIX):]), 'ihw'
        if procedure is not None and codes.PROCEDURE_MAP[procedure]['censored']:
            procedure = None
    elif key in ('ihwc', 'ihwc-storey', 'ihwc_storey'):
        procedure, kind = codes.procedure(key), 'ihw'
    else:
        procedure, kind = codes.procedure(key), 'unweighted'
        if procedure is not None and codes.PROCEDURE_MAP[procedure]['censored']:
            procedure = None
    if procedure is None:
        raise errors.InvalidConfig('unknown method %r' % (name,))

    censored = codes.PROCEDURE_MAP[procedure]['censored']
    return Method(name=key, kind=kind, procedure=procedure, K=K, J=J,
                  k=k if procedure == 'k_bonferroni' else 1,
                  tau=tau if censored else None,
                  tau_prime=tau_prime if procedure == 'ihwc_storey' else None,
                  lambda_grid=tuple(lambda_grid), solver=solver)


def write_report(reports, path=None):
    """ CSV of ``REPORT_COLUMNS``; returns the text when ``path`` is None """
    return tabular.write_frame([r.row() for r in reports], REPORT_COLUMNS, path)
