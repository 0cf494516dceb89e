###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

from . import core
from . import hypotheses
from . import procedures
from . import estimation
from . import engine
from . import lfdr
from . import simulation


class IHW(object):
    """
    Covariate-weighted multiple testing in one call.

        result = IHW(pvalues, covariates, options=dict(procedure='bh', alpha=0.1))
        result.rejected, result.weights

    ``options`` are IhwConfig keywords; ``J`` and ``lambda_grid`` go to the
    weight learner. With ``folds`` the user supplied fold labels are used
    unless ``fold_strategy`` says otherwise.
    """

    def __init__(self, pvalues, covariates, folds=None, options=None):
        opts = dict(options or {})
        learner_options = dict((key, opts.pop(key)) for key in
                               ('J', 'lambda_grid', 'K_inner', 'solver')
                               if key in opts)
        if learner_options:
            opts['learner'] = engine.learner_config(**learner_options)
        if folds is not None:
            opts.setdefault('fold_strategy', engine.COLUMN)

        self.table = hypotheses.HypothesisTable.from_arrays(pvalues, covariates,
                                                            folds)
        self.config = engine.IhwConfig(**opts)
        self.result = engine.run_ihw(self.table, self.config)

        self.weights = self.result.weights.weights
        self.rejected = self.result.outcome.rejected
        self.weighted_pvalues = self.result.outcome.weighted_pvalues
