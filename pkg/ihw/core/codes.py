###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

import math

import numpy as np

"""
Weighted multiple testing procedures known to ihw.py

criterion:    the error rate the procedure controls
fold_aware:   the procedure needs the fold partition
censored:     p-values <= tau are censored during learning, rejections need
              p <= tau
assumption:   'dependent' (independent folds, arbitrary dependence within
              folds) or 'independent' (fully independent nulls)
"""
PROCEDURE_MAP = {
    'bonferroni': dict(criterion='fwer', fold_aware=False, censored=False,
                       assumption='dependent'),
    'k_bonferroni': dict(criterion='k-fwer', fold_aware=False, censored=False,
                         assumption='dependent'),
    'holm': dict(criterion='fwer', fold_aware=True, censored=False,
                 assumption='dependent'),
    'sidak': dict(criterion='fwer', fold_aware=True, censored=False,
                  assumption='independent'),
    'bh': dict(criterion='fdr', fold_aware=False, censored=False,
               assumption=None),
    'by': dict(criterion='fdr', fold_aware=False, censored=False,
               assumption='dependent'),
    'ihwc': dict(criterion='fdr', fold_aware=False, censored=True,
                 assumption='independent'),
    'ihwc_storey': dict(criterion='fdr', fold_aware=True, censored=True,
                        assumption='independent'),
}

"""
Spellings accepted on the command line
"""
PROCEDURE_ALIASES = {
    'k-bonferroni': 'k_bonferroni',
    'kbonferroni': 'k_bonferroni',
    'ihwc-storey': 'ihwc_storey',
    'storey': 'ihwc_storey',
    'šidák': 'sidak',
}

"""
Defaults shared by the engine, the learner, the simulator and the CLI
"""
DEFAULT_ALPHA = 0.1
DEFAULT_FOLDS = 5
DEFAULT_INNER_FOLDS = 5
DEFAULT_TAU = 1e-4
DEFAULT_TAU_PRIME = 0.5
DEFAULT_RHO = 0.5
HYPOTHESES_PER_BIN = 1500
MAX_BINS = 40
UNREGULARIZED = math.inf
DEFAULT_LAMBDA_GRID = (UNREGULARIZED,) + tuple(np.logspace(-3, 1, 7))

WEIGHT_TOLERANCE = 1e-10
BUDGET_TOLERANCE = 1e-8


def procedure(name):
    """ Canonical procedure id for ``name`` or None """
    if name is None:
        return None
    key = str(name).strip().lower()
    key = PROCEDURE_ALIASES.get(key, key)
    return key if key in PROCEDURE_MAP else None


def criterion(name):
    return PROCEDURE_MAP[procedure(name)]['criterion']


def default_bins(m):
    """ min(max(floor(m / 1500), 1), 40) """
    return int(min(max(m // HYPOTHESES_PER_BIN, 1), MAX_BINS))
