###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

from . import counterexample
from . import harness
from . import scenarios

Scenario = scenarios.Scenario
ErrorReport = harness.ErrorReport
generate_replicate = scenarios.generate_replicate
load_scenarios = scenarios.load_scenarios
estimate_error_rates = harness.estimate_error_rates
make_method = harness.make_method
counterexample_naive_weighting = counterexample.counterexample_naive_weighting
