###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Attribute-style result objects that know how to turn themselves into JSON
"""

import json
import math

import numpy as np


class JSONEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, np.ndarray):
            return o.tolist()
        elif isinstance(o, (np.bool_,)):
            return bool(o)
        elif isinstance(o, np.integer):
            return int(o)
        elif isinstance(o, np.floating):
            return float(o)
        elif isinstance(o, ObjectWrapper):
            return dict((k, v) for k, v in o.__dict__.items()
                        if not k.startswith('_'))

        return json.JSONEncoder.default(self, o)


class ObjectWrapper(object):
    def __init__(self, **kwargs):
        for keyword, value in kwargs.items():
            setattr(self, keyword, value)

    def __repr__(self):
        fields = ', '.join('%s=%r' % (k, v) for k, v in sorted(self.__dict__.items())
                           if not k.startswith('_'))
        return '%s(%s)' % (type(self).__name__, fields)

    def json(self, **kwargs):
        return json.dumps(self, cls=JSONEncoder, **kwargs)


def parse_number(s):
    """
    Parses a command line or CSV token into a float; accepts "inf"
    """
    if s is None:
        return None
    text = str(s).strip()
    if not text:
        return None
    if text.lower() in ('inf', '+inf', 'infinity'):
        return math.inf
    return float(text)


def format_number(value):
    """ Full precision text for a float, "inf" for infinity """
    value = float(value)
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return repr(value)
