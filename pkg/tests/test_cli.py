#!/usr/bin/env python
###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
The ihw command line
"""

import contextlib
import io
import json
import os
import shutil
import tempfile
import unittest

import pandas as pd

from ihw import cli
from ihw.simulation import harness


FIXTURE = """pvalue,covariate
0.01,1
0.012,2
0.04,3
0.9,4
"""


class TestCli(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def path(self, name, content=None):
        path = os.path.join(self.tmpdir, name)
        if content is not None:
            with open(path, 'w') as f:
                f.write(content)
        return path

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = cli.main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_bh(self):
        """Four hypotheses, one bin: plain BH rejects the first two"""
        output = self.path('out.csv')
        code, out, _ = self.run_cli('test', self.path('in.csv', FIXTURE),
                                    '--procedure', 'bh', '--alpha', '0.05',
                                    '--folds', '2', '--seed', '1', '--output', output)
        self.assertEqual(code, cli.EXIT_OK)
        frame = pd.read_csv(output)
        self.assertEqual(list(frame.columns), cli.OUTPUT_COLUMNS)
        self.assertEqual(frame['rejected'].tolist(), [1, 1, 0, 0])
        self.assertEqual(frame['weight'].tolist(), [1.0] * 4)
        self.assertIn('discoveries: 2', out)
        self.assertIn('K: 2', out)

    def test_csv_to_stdout(self):
        code, out, err = self.run_cli('test', self.path('in.csv', FIXTURE),
                                      '--folds', '2', '--seed', '1')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertTrue(out.startswith(','.join(cli.OUTPUT_COLUMNS)))
        self.assertIn('procedure: bh', err)

    def test_ihwc_summary(self):
        code, out, _ = self.run_cli('test', self.path('in.csv', FIXTURE),
                                    '--procedure', 'ihwc', '--folds', '2', '--seed', '1',
                                    '--output', self.path('out.csv'))
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn('tau: 0.0001', out)

    def test_same_seed_same_bytes(self):
        outputs = []
        for name in ('a.csv', 'b.csv'):
            output = self.path(name)
            self.run_cli('test', self.path('in.csv', FIXTURE), '--folds', '2',
                         '--seed', '7', '--output', output)
            with open(output, 'rb') as f:
                outputs.append(f.read())
        self.assertEqual(outputs[0], outputs[1])

    def test_json(self):
        target = self.path('result.json')
        code, _, _ = self.run_cli('test', self.path('in.csv', FIXTURE), '--folds', '2',
                                  '--seed', '1', '--output', self.path('out.csv'),
                                  '--json', target)
        self.assertEqual(code, cli.EXIT_OK)
        with open(target) as f:
            data = json.load(f)
        self.assertEqual(len(data['weights']['weights']), 4)
        self.assertEqual(data['outcome']['procedure_id'], 'bh')

    def test_missing_column(self):
        code, _, err = self.run_cli('test', self.path('in.csv', 'p,covariate\n0.1,1\n'))
        self.assertEqual(code, cli.EXIT_DATA)
        self.assertIn('pvalue', err)

    def test_bad_number_names_the_line(self):
        text = 'pvalue,covariate\n0.1,1\n0.2,2\nabc,3\n'
        code, _, err = self.run_cli('test', self.path('in.csv', text))
        self.assertEqual(code, cli.EXIT_DATA)
        self.assertIn('line 4', err)

    def test_out_of_range(self):
        text = 'pvalue,covariate\n0.1,1\n1.2,2\n'
        code, _, err = self.run_cli('test', self.path('in.csv', text))
        self.assertEqual(code, cli.EXIT_DATA)
        self.assertIn('line 3', err)

    def test_bad_config(self):
        code, _, _ = self.run_cli('test', self.path('in.csv', FIXTURE),
                                  '--procedure', 'fisher')
        self.assertEqual(code, cli.EXIT_USAGE)
        code, _, _ = self.run_cli('test', self.path('in.csv', FIXTURE), '--tau', '0.01')
        self.assertEqual(code, cli.EXIT_USAGE)

    def test_usage_error(self):
        with self.assertRaises(SystemExit) as ctx:
            self.run_cli('test')
        self.assertEqual(ctx.exception.code, cli.EXIT_USAGE)

    def test_counterexample(self):
        code, out, _ = self.run_cli('counterexample', '--alpha', '0.5', '--reps', '1000',
                                    '--seed', '3')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn('analytic FWER: 0.531250', out)

    def test_counterexample_bad_alpha(self):
        code, _, err = self.run_cli('counterexample', '--alpha', '1.5')
        self.assertEqual(code, cli.EXIT_USAGE)
        self.assertIn('ihw:', err)

    def test_simulate(self):
        scenarios = self.path('scenarios.ini', '[null]\nm = 100\n')
        output = self.path('report.csv')
        code, _, _ = self.run_cli('simulate', scenarios, '--procedures', 'bh,bonferroni',
                                  '--reps', '5', '--seed', '2', '--output', output)
        self.assertEqual(code, cli.EXIT_OK)
        frame = pd.read_csv(output)
        self.assertEqual(list(frame.columns), harness.REPORT_COLUMNS)
        self.assertEqual(frame['procedure'].tolist(), ['bh', 'bonferroni'])

    def test_simulate_unknown_key(self):
        scenarios = self.path('scenarios.ini', '[s]\nsignal = 2\n')
        code, _, err = self.run_cli('simulate', scenarios, '--reps', '2')
        self.assertEqual(code, cli.EXIT_USAGE)
        self.assertIn('signal', err)


if __name__ == '__main__':
    unittest.main()
