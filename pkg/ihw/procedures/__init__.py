###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

from . import weighted
from .outcome import TestOutcome

apply_procedure = weighted.apply_procedure
