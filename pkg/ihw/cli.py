###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Command line front end

    ihw test INPUT.csv [--procedure bh] [--alpha 0.1] ... [--output OUT.csv]
    ihw simulate SCENARIOS.ini [--procedures bh,ihw-bh] [--reps 100] ...
    ihw counterexample [--alpha 0.2] [--reps 1000000] [--seed 1]

Exit codes: 0 success, 1 usage or configuration error, 2 data error.
"""

import argparse
import logging
import sys

import numpy as np

from .core import codes
from .core import errors
from .core import tabular
from .core import wrappers
from . import engine
from . import hypotheses
from . import lfdr
from .estimation import learner
from .simulation import counterexample
from .simulation import harness
from .simulation import scenarios

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

OUTPUT_COLUMNS = ['index', 'pvalue', 'covariate', 'fold', 'weight',
                  'weighted_pvalue', 'rejected', 'threshold']


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '%s: error: %s\n' % (self.prog, message))


def _lambda_grid(text):
    if text is None or text.strip().lower() == 'auto':
        return codes.DEFAULT_LAMBDA_GRID
    try:
        value = wrappers.parse_number(text)
    except ValueError:
        raise errors.InvalidConfig(
            '--lambda must be auto, inf or a number, got %r' % text)
    return (value,)


def _learner_config(args):
    return learner.LearnerConfig(J=args.bins, lambda_grid=_lambda_grid(args.lam),
                                 solver=args.solver)


def _output_rows(table, result, lfdr_values=None):
    weights = np.asarray(result.weights)
    outcome = result.outcome
    folds = None if 'split_seeds' in result.diagnostics else result.partition.assignments
    for i in range(table.m):
        covariate = table.covariates[i]
        row = dict(index=i, pvalue=table.pvalues[i],
                   covariate=covariate,
                   fold='' if folds is None else int(folds[i]),
                   weight=weights[i],
                   weighted_pvalue=outcome.weighted_pvalues[i],
                   rejected=int(outcome.rejected[i]),
                   threshold=outcome.thresholds[i])
        if lfdr_values is not None:
            row['lfdr'] = lfdr_values[i]
        yield row


def _summary(table, config, result):
    lambdas = result.diagnostics.get('lambdas')
    if lambdas is None:
        lambdas = {}
        for b, split in enumerate(result.diagnostics.get('splits', []), start=1):
            for fold, lam in split['lambdas'].items():
                lambdas['%d.%d' % (b, fold)] = lam
    lines = [
        'm: %d' % table.m,
        'K: %d' % result.partition.K,
        'procedure: %s' % config.procedure_id,
        'alpha: %s' % wrappers.format_number(config.alpha),
        'discoveries: %d' % result.outcome.discoveries,
        'lambda: %s' % ', '.join(
            '%s=%s' % (fold, 'uniform' if lam is None else wrappers.format_number(lam))
            for fold, lam in sorted(lambdas.items(), key=lambda kv: str(kv[0]))),
    ]
    if config.censor_tau is not None:
        lines.append('tau: %s' % wrappers.format_number(config.censor_tau))
    if config.storey_tau_prime is not None:
        lines.append("tau': %s" % wrappers.format_number(config.storey_tau_prime))
    if int(config.B) > 1:
        lines.append('B: %d' % int(config.B))
    return '\n'.join(lines)


def cmd_test(args):
    table = tabular.read_hypotheses(args.input)
    strategy = args.fold_strategy
    if strategy is None:
        strategy = engine.COLUMN if table.fold_labels is not None else hypotheses.RANDOM
    config = engine.IhwConfig(
        alpha=args.alpha, procedure=args.procedure, k=args.k, tau=args.tau,
        tau_prime=args.tau_prime, K=args.folds, fold_strategy=strategy,
        seed=args.seed, B=args.splits, learner=_learner_config(args))
    result = engine.run_ihw(table, config)

    lfdr_values = None
    columns = list(OUTPUT_COLUMNS)
    if args.lfdr:
        bins = learner.bin_covariate(table, config.learner.J)
        lfdr_values = lfdr.cross_fitted_lfdr(table, bins, result.partition,
                                             config.censor_tau).values
        columns.append('lfdr')

    rows = list(_output_rows(table, result, lfdr_values))
    summary = _summary(table, config, result)
    if args.output:
        tabular.write_frame(rows, columns, args.output)
        print(summary)
    else:
        sys.stdout.write(tabular.write_frame(rows, columns))
        sys.stderr.write(summary + '\n')

    if args.json:
        with open(args.json, 'w') as f:
            f.write(result.json(sort_keys=True))
    return EXIT_OK


def cmd_simulate(args):
    loaded = scenarios.load_scenarios(args.scenarios)
    names = [name.strip() for name in args.procedures.split(',') if name.strip()]
    if not names:
        raise errors.InvalidConfig('--procedures is empty')

    reports = []
    for scenario in loaded:
        for name in names:
            method = harness.make_method(
                name, K=args.folds, J=args.bins, k=args.k, tau=args.tau,
                tau_prime=args.tau_prime, lambda_grid=_lambda_grid(args.lam),
                solver=args.solver, scenario=scenario)
            reports.append(harness.estimate_error_rates(
                scenario, method, args.reps, args.alpha, args.seed, k=args.k))

    if args.output:
        harness.write_report(reports, args.output)
    else:
        sys.stdout.write(harness.write_report(reports))
    return EXIT_OK


def cmd_counterexample(args):
    report = counterexample.counterexample_naive_weighting(
        args.alpha, args.reps, args.seed, adversarial=not args.control)
    print('alpha: %s' % wrappers.format_number(report.alpha))
    print('analytic FWER: %.6f' % report.analytic_fwer)
    print('Monte Carlo FWER: %.6f (SE %.6f, %d reps%s)'
          % (report.fwer, report.fwer_se, report.reps,
             ', W = 1' if args.control else ''))
    return EXIT_OK


def _add_method_flags(parser):
    parser.add_argument('--alpha', type=float, default=codes.DEFAULT_ALPHA)
    parser.add_argument('--folds', type=int, default=None,
                        help='number of outer folds K (default %d for random '
                             'folds)' % codes.DEFAULT_FOLDS)
    parser.add_argument('--seed', type=int, default=None)
    parser.add_argument('--bins', type=int, default=None,
                        help='covariate bins J (default min(max(m // %d, 1), %d))'
                             % (codes.HYPOTHESES_PER_BIN, codes.MAX_BINS))
    parser.add_argument('--lambda', dest='lam', default='auto',
                        help='auto, inf or a regularization value')
    parser.add_argument('--tau', type=float, default=None,
                        help='censoring threshold (default %g)' % codes.DEFAULT_TAU)
    parser.add_argument('--tau-prime', type=float, default=None,
                        help='Storey threshold (default %g)' % codes.DEFAULT_TAU_PRIME)
    parser.add_argument('--k', type=int, default=1, help='k of k-Bonferroni')
    parser.add_argument('--solver', choices=['simplex', 'highs'], default='simplex')


def build_parser():
    parser = _Parser(prog='ihw', description='Covariate-weighted multiple testing')
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true')
    verbosity.add_argument('-q', '--quiet', action='store_true')
    commands = parser.add_subparsers(dest='command', parser_class=_Parser)
    commands.required = True

    test = commands.add_parser('test', help='weight and test the hypotheses of a CSV file')
    test.add_argument('input')
    test.add_argument('--procedure', default='bh',
                      help=', '.join(sorted(codes.PROCEDURE_MAP)))
    test.add_argument('--fold-strategy', choices=[engine.COLUMN, hypotheses.RANDOM],
                      default=None)
    test.add_argument('--splits', type=int, default=1,
                      help='average the weights of B random splits')
    test.add_argument('--output', default=None)
    test.add_argument('--lfdr', action='store_true',
                      help='add a cross-fitted local fdr column')
    test.add_argument('--json', default=None, metavar='PATH',
                      help='also write the full result as JSON')
    _add_method_flags(test)
    test.set_defaults(handler=cmd_test)

    simulate = commands.add_parser('simulate', help='Monte Carlo error rates')
    simulate.add_argument('scenarios')
    simulate.add_argument('--procedures', default='bh,ihw-bh')
    simulate.add_argument('--reps', type=int, default=100)
    simulate.add_argument('--output', default=None)
    _add_method_flags(simulate)
    simulate.set_defaults(handler=cmd_simulate)

    example = commands.add_parser('counterexample',
                                  help='naive weighting that breaks FWER control')
    example.add_argument('--alpha', type=float, default=0.2)
    example.add_argument('--reps', type=int, default=1000000)
    example.add_argument('--seed', type=int, default=None)
    example.add_argument('--control', action='store_true',
                         help='use W = 1 instead of the adversarial weights')
    example.set_defaults(handler=cmd_counterexample)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = logging.WARNING
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')

    try:
        return args.handler(args)
    except errors.ConfigError as e:
        sys.stderr.write('ihw: %s\n' % e)
        return EXIT_USAGE
    except (errors.ValidationError, errors.LpError) as e:
        sys.stderr.write('ihw: %s\n' % e)
        return EXIT_DATA
    except (IOError, OSError) as e:
        sys.stderr.write('ihw: %s\n' % e)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
