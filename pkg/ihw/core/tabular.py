###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
CSV input and output

Input needs a header with the columns ``pvalue`` and ``covariate`` and may
carry a ``fold`` column. The covariate is numeric when every entry parses as
a number and categorical otherwise. Line numbers in errors count the header
as line 1.
"""

import io
import logging

import pandas as pd

from . import errors
from . import wrappers
from .. import hypotheses

log = logging.getLogger(__name__)

REQUIRED_COLUMNS = ('pvalue', 'covariate')
FOLD_COLUMN = 'fold'


def _line(index):
    return index + 2


def _number(text, index, column):
    try:
        return wrappers.parse_number(text)
    except ValueError:
        raise errors.ParseError('%s %r is not a number' % (column, text),
                                line=_line(index), column=column)


def _fold(text, index):
    value = _number(text, index, FOLD_COLUMN)
    if value is None:
        return None
    if value != int(value):
        raise errors.ParseError('fold %r is not an integer' % text,
                                line=_line(index), column=FOLD_COLUMN)
    return int(value)


def read_frame(source):
    """ Every cell as text, empty cells as '' """
    try:
        return pd.read_csv(source, dtype=str, keep_default_na=False,
                           skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise errors.ParseError('the input is empty', line=1)
    except pd.errors.ParserError as e:
        raise errors.ParseError(str(e))


def read_hypotheses(source):
    """ HypothesisTable from a CSV path or file object """
    frame = read_frame(source)
    frame.columns = [c.strip().lower() for c in frame.columns]
    for column in REQUIRED_COLUMNS:
        if column not in frame.columns:
            raise errors.ParseError('missing column %r' % column, line=1,
                                    column=column)

    pvalues = [_number(text, i, 'pvalue') for i, text in enumerate(frame['pvalue'])]
    texts = [text.strip() for text in frame['covariate']]
    try:
        covariates = [wrappers.parse_number(text) for text in texts]
    except ValueError:
        covariates = texts
    else:
        covariates = [texts[i] if c is None else c for i, c in enumerate(covariates)]

    rows = list(zip(pvalues, covariates))
    if FOLD_COLUMN in frame.columns:
        folds = [_fold(text, i) for i, text in enumerate(frame[FOLD_COLUMN])]
        rows = [row + (fold,) for row, fold in zip(rows, folds)]

    for i, (p, x) in enumerate(zip(pvalues, covariates)):
        if p is None:
            raise errors.ParseError('empty pvalue', line=_line(i), column='pvalue')
        if x == '':
            raise errors.ParseError('empty covariate', line=_line(i),
                                    column='covariate')
    try:
        table = hypotheses.validate_table(rows)
    except errors.ValidationError as e:
        index = getattr(e, 'index', None)
        if index is None:
            raise
        raise errors.ParseError(str(e), line=_line(index))
    log.info('Read %d hypotheses (%s covariate%s)', table.m,
             table.covariate_kind, ', user folds' if table.fold_labels is not None else '')
    return table


def write_frame(rows, columns, path=None):
    """
    Writes dict rows as CSV with full float precision; returns the text when
    ``path`` is None.
    """
    frame = pd.DataFrame(list(rows), columns=list(columns))
    if path is None:
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, lineterminator='\n')
        return buffer.getvalue()
    frame.to_csv(path, index=False, lineterminator='\n')
    return path
