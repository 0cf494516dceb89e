###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

import logging

from . import _core
from . import codes
from . import errors
from . import wrappers


# Initialize the logging module
logging.getLogger('ihw').addHandler(logging.NullHandler())


as_vector = _core.as_vector
check_level = _core.check_level
check_same_length = _core.check_same_length
harmonic_number = _core.harmonic_number
