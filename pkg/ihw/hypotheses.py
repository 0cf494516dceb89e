###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Hypotheses, folds and weights

A HypothesisTable holds the (p-value, covariate) pairs, a FoldPartition splits
them into K folds and a WeightVector carries weights that average to one in
every fold.
"""

import logging
import math

import numpy as np

from .core import codes
from .core import errors
from .core import wrappers
from .core import _core

log = logging.getLogger(__name__)

NUMERIC = 'numeric'
CATEGORICAL = 'categorical'

USER_SUPPLIED = 'user_supplied'
RANDOM = 'random'


def _readonly(array):
    array.setflags(write=False)
    return array


class HypothesisTable(wrappers.ObjectWrapper):
    """
    Validated per-hypothesis records.

    :ivar pvalues: float array in [0, 1]
    :ivar covariates: float array (numeric kind) or object array of str labels
    :ivar covariate_kind: 'numeric' or 'categorical'
    :ivar fold_labels: int array with labels in 1..K, or None
    """

    def __init__(self, pvalues, covariates, covariate_kind, fold_labels=None):
        super(HypothesisTable, self).__init__(
            pvalues=_readonly(pvalues),
            covariates=_readonly(covariates),
            covariate_kind=covariate_kind,
            fold_labels=None if fold_labels is None else _readonly(fold_labels))

    @property
    def m(self):
        return len(self.pvalues)

    @classmethod
    def from_arrays(cls, pvalues, covariates, folds=None):
        pvalues = list(pvalues)
        covariates = list(covariates)
        if folds is None:
            _core.check_same_length(pvalues, covariates)
            rows = zip(pvalues, covariates)
        else:
            folds = list(folds)
            _core.check_same_length(pvalues, covariates, folds)
            rows = zip(pvalues, covariates, folds)
        return validate_table(rows)


def _check_pvalue(index, value):
    if value is None:
        raise errors.MissingValue(index, 'p-value')
    if not _core.is_numeric(value):
        raise errors.PValueOutOfRange(index, value)
    p = float(value)
    if math.isnan(p):
        raise errors.MissingValue(index, 'p-value')
    if not 0.0 <= p <= 1.0:
        raise errors.PValueOutOfRange(index, value)
    return p


def _covariate_kind(index, value):
    if value is None or (_core.is_numeric(value) and math.isnan(float(value))):
        raise errors.MissingValue(index, 'covariate')
    if _core.is_numeric(value):
        if math.isinf(float(value)):
            raise errors.MissingValue(index, 'covariate')
        return NUMERIC
    if isinstance(value, str):
        return CATEGORICAL
    raise errors.ValidationError(
        'covariate at index %d has unsupported type %s'
        % (index, type(value).__name__))


def _check_fold(index, value):
    if isinstance(value, (bool, np.bool_)) or not _core.is_numeric(value):
        raise errors.ValidationError(
            'fold label at index %d is %r, expected an integer >= 1'
            % (index, value))
    if float(value) != int(value) or int(value) < 1:
        raise errors.ValidationError(
            'fold label at index %d is %r, expected an integer >= 1'
            % (index, value))
    return int(value)


def validate_table(raw):
    """
    Validates rows of ``(pvalue, covariate)`` or ``(pvalue, covariate, fold)``
    and returns a HypothesisTable in input order.

    Either every row carries a fold label or none does. Fold labels must cover
    1..K without gaps.
    """
    pvalues, covariates, folds = [], [], []
    kind = None
    with_folds = None

    for index, row in enumerate(raw):
        row = tuple(row)
        if len(row) not in (2, 3):
            raise errors.ValidationError(
                'row %d has %d fields, expected 2 or 3' % (index, len(row)))
        has_fold = len(row) == 3 and row[2] is not None
        if with_folds is None:
            with_folds = has_fold
        elif has_fold != with_folds:
            raise errors.MissingValue(index, 'fold label')

        pvalues.append(_check_pvalue(index, row[0]))

        row_kind = _covariate_kind(index, row[1])
        if kind is None:
            kind = row_kind
        elif row_kind != kind:
            raise errors.MixedCovariateKinds(index)
        covariates.append(row[1])

        if has_fold:
            folds.append(_check_fold(index, row[2]))

    if not pvalues:
        raise errors.EmptyInput('hypothesis table')

    if kind == NUMERIC:
        covariate_array = np.asarray(covariates, dtype=float)
    else:
        covariate_array = np.empty(len(covariates), dtype=object)
        covariate_array[:] = covariates

    fold_array = None
    if with_folds:
        fold_array = np.asarray(folds, dtype=int)
        counts = np.bincount(fold_array, minlength=fold_array.max() + 1)
        for fold in range(1, fold_array.max() + 1):
            if counts[fold] == 0:
                raise errors.EmptyFold(fold)

    return HypothesisTable(np.asarray(pvalues, dtype=float), covariate_array,
                           kind, fold_array)


class FoldPartition(wrappers.ObjectWrapper):
    """
    Assignment of hypotheses to folds 1..K.

    ``seed`` is set iff ``strategy`` is random; the assignment is a pure
    function of (m, K, seed).
    """

    def __init__(self, assignments, K, strategy, seed=None):
        super(FoldPartition, self).__init__(
            assignments=_readonly(np.asarray(assignments, dtype=int)),
            K=int(K),
            strategy=strategy,
            seed=seed)

    @property
    def m(self):
        return len(self.assignments)

    @property
    def sizes(self):
        return np.bincount(self.assignments, minlength=self.K + 1)[1:]

    def members(self, fold):
        """ Indices of the hypotheses in ``fold`` (1-based fold id) """
        return np.flatnonzero(self.assignments == fold)

    def __iter__(self):
        for fold in range(1, self.K + 1):
            yield fold, self.members(fold)


def split_folds(table, K=None, strategy=RANDOM, seed=None):
    """
    Splits the hypotheses of ``table`` into K folds.

    user_supplied: the table's fold labels are passed through (K may be None,
    otherwise it must match the number of labelled folds).
    random: a seeded shuffle dealt round-robin into K folds, so fold sizes
    differ by at most one.
    """
    m = table.m
    if strategy in ('column', USER_SUPPLIED):
        if table.fold_labels is None:
            raise errors.MissingFoldLabels()
        labels = table.fold_labels
        found = int(labels.max())
        if K is not None and int(K) != found:
            raise errors.InvalidConfig(
                'K = %d but the fold labels define %d folds' % (K, found))
        if found < 2:
            raise errors.InvalidConfig('need at least 2 folds, got %d' % found)
        return FoldPartition(labels.copy(), found, USER_SUPPLIED)

    if strategy != RANDOM:
        raise errors.InvalidConfig('unknown fold strategy %r' % (strategy,))

    if K is None:
        K = codes.DEFAULT_FOLDS
    K = int(K)
    if K < 2:
        raise errors.InvalidConfig('need at least 2 folds, got %d' % K)
    if m < K:
        raise errors.TooFewHypotheses(m, K)

    if seed is None:
        seed = int(np.random.SeedSequence().generate_state(1)[0])
        log.info('No fold seed given, drew seed %d', seed)

    rng = np.random.default_rng(seed)
    assignments = np.empty(m, dtype=int)
    assignments[rng.permutation(m)] = np.arange(m) % K + 1
    return FoldPartition(assignments, K, RANDOM, seed)


class WeightVector(wrappers.ObjectWrapper):
    """
    Nonnegative hypothesis weights.

    With a partition, every fold has mean weight 1; without one (weights
    averaged over several random splits) only the budget sum(W) = m holds.
    """

    def __init__(self, weights, partition=None):
        super(WeightVector, self).__init__(
            weights=_readonly(np.asarray(weights, dtype=float)),
            partition=partition)

    def __len__(self):
        return len(self.weights)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.weights
        return self.weights.astype(dtype)

    def fold_means(self):
        if self.partition is None:
            return None
        return np.array([self.weights[idx].mean() for _, idx in self.partition])

    def check(self):
        """ Asserts the weight invariants, returns self """
        if np.any(self.weights < 0) or not np.all(np.isfinite(self.weights)):
            index = int(np.flatnonzero(~(self.weights >= 0) | ~np.isfinite(self.weights))[0])
            raise errors.NegativeWeight(index, self.weights[index])
        if self.partition is not None:
            means = self.fold_means()
            if np.any(np.abs(means - 1.0) > codes.WEIGHT_TOLERANCE):
                raise errors.ValidationError(
                    'fold weight means %s differ from 1' % means)
        total = self.weights.sum()
        if abs(total - len(self.weights)) > codes.BUDGET_TOLERANCE * max(1, len(self.weights)):
            raise errors.ValidationError(
                'weights sum to %r, expected %d' % (total, len(self.weights)))
        return self


def normalize_weights(raw_weights, partition):
    """
    Rescales raw weights to mean one within every fold.

    A fold whose raw weights are all zero gets weight one everywhere.
    """
    raw = _core.as_vector(raw_weights)
    _core.check_same_length(raw, partition.assignments)
    bad = np.flatnonzero(~np.isfinite(raw) | (raw < 0))
    if len(bad):
        raise errors.NegativeWeight(int(bad[0]), raw[bad[0]])

    weights = np.empty_like(raw)
    for fold, idx in partition:
        total = raw[idx].sum()
        if total == 0:
            weights[idx] = 1.0
        else:
            weights[idx] = len(idx) * raw[idx] / total
    return WeightVector(weights, partition).check()


def weighted_pvalues(pvalues, weights):
    """
    Q = P / W with P / 0 = inf for P > 0 and 0 / 0 = 0.
    """
    p = _core.as_vector(pvalues)
    w = _core.as_vector(weights)
    _core.check_same_length(p, w)
    q = np.full(len(p), math.inf)
    positive = w > 0
    q[positive] = p[positive] / w[positive]
    q[~positive & (p == 0)] = 0.0
    return q
