###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

import numpy as np

from . import errors


def as_vector(values, name='values'):
    """ Return ``values`` as a one dimensional float array """
    vector = np.asarray(values, dtype=float)
    if vector.ndim != 1:
        vector = vector.reshape(-1)
    return vector


def check_level(alpha, name='alpha'):
    """ Levels are open-interval probabilities """
    try:
        value = float(alpha)
    except (TypeError, ValueError):
        raise errors.InvalidLevel(alpha, name)
    if not 0.0 < value < 1.0:
        raise errors.InvalidLevel(alpha, name)
    return value


def check_same_length(*vectors):
    lengths = [len(v) for v in vectors]
    if len(set(lengths)) > 1:
        raise errors.LengthMismatch(*lengths)
    return lengths[0] if lengths else 0


def harmonic_number(m):
    """ H_m = sum_{k=1}^m 1/k """
    return float(np.sum(1.0 / np.arange(1, int(m) + 1)))


def is_numeric(value):
    if isinstance(value, (bool, np.bool_)):
        return False
    return isinstance(value, (int, float, np.integer, np.floating))
