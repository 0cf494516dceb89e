###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

import numpy as np

from .. import hypotheses
from ..core import errors
from ..core import wrappers
from ..core import _core


class TestOutcome(wrappers.ObjectWrapper):
    """
    Result of a weighted multiple testing procedure.

    :ivar rejected: boolean array
    :ivar k_star: number of rejections
    :ivar thresholds: p-value threshold applied to each hypothesis
    :ivar weighted_pvalues: P / W with the P / 0 = inf convention
    :ivar procedure_id: e.g. 'bh'
    :ivar parameters: alpha and procedure specific settings
    """
    __test__ = False

    def __init__(self, rejected, thresholds, weighted_pvalues, procedure_id,
                 parameters, k_star=None):
        rejected = np.asarray(rejected, dtype=bool)
        super(TestOutcome, self).__init__(
            rejected=rejected,
            k_star=int(rejected.sum()) if k_star is None else int(k_star),
            thresholds=np.asarray(thresholds, dtype=float),
            weighted_pvalues=np.asarray(weighted_pvalues, dtype=float),
            procedure_id=procedure_id,
            parameters=dict(parameters))

    @property
    def discoveries(self):
        return int(self.rejected.sum())


def prepare(pvalues, weights):
    """ Validated (P, W) float arrays of equal length """
    p = _core.as_vector(pvalues)
    w = _core.as_vector(weights)
    _core.check_same_length(p, w)
    if len(p) == 0:
        raise errors.EmptyInput('p-value vector')
    bad = np.flatnonzero(~((p >= 0) & (p <= 1)))
    if len(bad):
        raise errors.PValueOutOfRange(int(bad[0]), p[bad[0]])
    bad = np.flatnonzero(~np.isfinite(w) | (w < 0))
    if len(bad):
        raise errors.NegativeWeight(int(bad[0]), w[bad[0]])
    return p, w


def fold_groups(partition, m):
    """ (fold, indices) pairs; a missing partition means one fold """
    if partition is None:
        return [(1, np.arange(m))]
    if partition.m != m:
        raise errors.LengthMismatch(m, partition.m)
    return list(partition)


weighted_pvalues = hypotheses.weighted_pvalues
