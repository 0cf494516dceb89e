###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Small dense linear programs

    maximize    c.x
    subject to  a_r.x (<=, =, >=) b_r   for every constraint r
                lo_i <= x_i <= hi_i

The default solver is a dense two-phase primal simplex on a full tableau with
Bland's rule, which makes every solve deterministic and cycle free. The
learner's programs have a few hundred rows at most, so exactness wins over
speed. ``method='highs'`` hands the same program to scipy's HiGHS instead.
"""

import logging
import math

import numpy as np
from scipy import optimize

from ..core import errors
from ..core import wrappers

log = logging.getLogger(__name__)

OPTIMAL = 'optimal'
INFEASIBLE = 'infeasible'
UNBOUNDED = 'unbounded'

PIVOT_TOLERANCE = 1e-9
FEASIBILITY_TOLERANCE = 1e-8

_RELATIONS = {
    '<=': '<=', '≤': '<=', 'le': '<=',
    '>=': '>=', '≥': '>=', 'ge': '>=',
    '=': '=', '==': '=', 'eq': '=',
}


class LinearProgram(wrappers.ObjectWrapper):
    """
    A maximization problem. Variables default to the bounds [0, inf).
    """

    def __init__(self, objective, constraints=(), bounds=None):
        objective = np.asarray(objective, dtype=float).reshape(-1)
        if bounds is None:
            bounds = [(0.0, math.inf)] * len(objective)
        super(LinearProgram, self).__init__(
            objective=objective,
            constraints=[],
            bounds=[(float(lo), float(hi)) for lo, hi in bounds])
        for coefficients, relation, rhs in constraints:
            self.add_constraint(coefficients, relation, rhs)

    @property
    def n(self):
        return len(self.objective)

    def add_constraint(self, coefficients, relation, rhs):
        if relation not in _RELATIONS:
            raise errors.InvalidProgram('unknown relation %r' % (relation,))
        self.constraints.append((np.asarray(coefficients, dtype=float).reshape(-1),
                                 _RELATIONS[relation], float(rhs)))

    def validate(self):
        n = self.n
        if len(self.bounds) != n:
            raise errors.DimensionMismatch(
                '%d bounds for %d variables' % (len(self.bounds), n))
        if not np.all(np.isfinite(self.objective)):
            raise errors.InvalidProgram('objective has non-finite coefficients')
        for r, (a, relation, b) in enumerate(self.constraints):
            if len(a) != n:
                raise errors.DimensionMismatch(
                    'constraint %d has %d coefficients for %d variables'
                    % (r, len(a), n))
            if not (np.all(np.isfinite(a)) and math.isfinite(b)):
                raise errors.InvalidProgram(
                    'constraint %d has non-finite coefficients' % r)
        for i, (lo, hi) in enumerate(self.bounds):
            if math.isnan(lo) or math.isnan(hi) or lo == math.inf or hi == -math.inf:
                raise errors.InvalidProgram('variable %d has bounds %r' % (i, (lo, hi)))
        return self

    def matrix(self):
        """ (A, relations, b) for the general constraints """
        if not self.constraints:
            return np.zeros((0, self.n)), [], np.zeros(0)
        A = np.vstack([a for a, _, _ in self.constraints])
        relations = [rel for _, rel, _ in self.constraints]
        b = np.array([rhs for _, _, rhs in self.constraints])
        return A, relations, b

    def is_feasible(self, x, tolerance=FEASIBILITY_TOLERANCE):
        x = np.asarray(x, dtype=float)
        for (lo, hi), value in zip(self.bounds, x):
            slack = tolerance * max(1.0, abs(value))
            if value < lo - slack or value > hi + slack:
                return False
        for a, relation, b in self.constraints:
            lhs = float(a.dot(x))
            slack = tolerance * max(1.0, abs(b), float(np.abs(a).dot(np.abs(x))))
            if relation == '<=' and lhs > b + slack:
                return False
            if relation == '>=' and lhs < b - slack:
                return False
            if relation == '=' and abs(lhs - b) > slack:
                return False
        return True


class LpSolution(wrappers.ObjectWrapper):
    def __init__(self, status, primal=None, objective_value=None,
                 iterations=0, method='simplex'):
        super(LpSolution, self).__init__(status=status, primal=primal,
                                         objective_value=objective_value,
                                         iterations=iterations, method=method)

    @property
    def optimal(self):
        return self.status == OPTIMAL


def solve_lp(lp, method='simplex', tolerance=PIVOT_TOLERANCE, max_iter=None):
    lp.validate()
    if method == 'simplex':
        solution = _solve_simplex(lp, tolerance, max_iter)
    elif method == 'highs':
        solution = _solve_highs(lp)
    else:
        raise errors.InvalidProgram('unknown LP method %r' % (method,))

    if solution.optimal and not lp.is_feasible(solution.primal):
        raise errors.NumericalFailure(
            'returned primal violates the constraints (%s)' % method)
    return solution


def _standard_form(lp):
    """
    Substitutes x = shift + M y with y >= 0 and returns the constraint rows on
    y, including the rows y_k <= hi - lo for doubly bounded variables.
    """
    n = lp.n
    columns = []
    shift = np.zeros(n)
    upper_rows = []
    for i, (lo, hi) in enumerate(lp.bounds):
        k = len(columns)
        if lo > -math.inf:
            shift[i] = lo
            columns.append((i, 1.0))
            if hi < math.inf:
                upper_rows.append((k, hi - lo))
        elif hi < math.inf:
            shift[i] = hi
            columns.append((i, -1.0))
        else:
            columns.append((i, 1.0))
            columns.append((i, -1.0))

    M = np.zeros((n, len(columns)))
    for k, (i, sign) in enumerate(columns):
        M[i, k] = sign

    A, relations, b = lp.matrix()
    rows = A.dot(M) if len(b) else np.zeros((0, len(columns)))
    rhs = b - A.dot(shift) if len(b) else np.zeros(0)
    relations = list(relations)

    if upper_rows:
        extra = np.zeros((len(upper_rows), len(columns)))
        for r, (k, width) in enumerate(upper_rows):
            extra[r, k] = 1.0
        rows = np.vstack([rows, extra])
        rhs = np.concatenate([rhs, [width for _, width in upper_rows]])
        relations += ['<='] * len(upper_rows)

    cost = lp.objective.dot(M)
    return rows, relations, rhs, cost, shift, M


def _pivot(T, row, col):
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])
    T[:, col] = 0.0
    T[row, col] = 1.0


def _run_simplex(T, basis, cost, tolerance, max_iter):
    """
    Maximizes cost.y over the tableau T (constraint rows, last column rhs)
    with Bland's rule. Returns (status, pivots).
    """
    for iteration in range(max_iter):
        reduced = cost - cost[basis].dot(T[:, :-1])
        entering = np.flatnonzero(reduced > tolerance)
        if not len(entering):
            return OPTIMAL, iteration
        col = entering[0]

        column = T[:, col]
        candidates = np.flatnonzero(column > tolerance)
        if not len(candidates):
            return UNBOUNDED, iteration
        ratios = T[candidates, -1] / column[candidates]
        best = ratios.min()
        tied = candidates[ratios <= best + tolerance * max(1.0, abs(best))]
        row = tied[np.argmin(basis[tied])]

        _pivot(T, row, col)
        basis[row] = col
        T[:, -1] = np.where(np.abs(T[:, -1]) < tolerance * 1e-3, 0.0, T[:, -1])

    raise errors.NumericalFailure(
        'simplex did not terminate within %d pivots' % max_iter)


def _slack_form(rows, relations):
    """ [rows | slack columns] in the column order of the tableau """
    n_slack = sum(1 for rel in relations if rel != '=')
    S = np.zeros((rows.shape[0], rows.shape[1] + n_slack))
    S[:, :rows.shape[1]] = rows
    col = rows.shape[1]
    for r, rel in enumerate(relations):
        if rel != '=':
            S[r, col] = 1.0 if rel == '<=' else -1.0
            col += 1
    return S


def _basic_solution(S, b, basis, tableau_values):
    """
    Solves B y_B = b on the original rows for the final basis, since the
    tableau right-hand side drifts over many pivots. Keeps the tableau values
    when B is singular or the re-solve fits the rows worse.
    """
    def residual(values):
        y = np.zeros(S.shape[1])
        y[basis] = values
        return float(np.abs(S.dot(y) - b).max(initial=0.0))

    values = np.maximum(tableau_values, 0.0)
    if len(basis):
        try:
            solved = np.maximum(np.linalg.solve(S[:, basis], b), 0.0)
        except np.linalg.LinAlgError:
            solved = None
        if solved is not None and np.all(np.isfinite(solved)) \
                and residual(solved) <= residual(values):
            values = solved
    y = np.zeros(S.shape[1])
    y[basis] = values
    return y


def _solve_simplex(lp, tolerance, max_iter):
    for lo, hi in lp.bounds:
        if lo > hi:
            return LpSolution(INFEASIBLE)

    rows, relations, rhs, cost, shift, M = _standard_form(lp)
    n_rows, n_y = rows.shape

    # b >= 0 for the initial basis
    for r in range(n_rows):
        if rhs[r] < 0:
            rows[r] *= -1.0
            rhs[r] *= -1.0
            relations[r] = {'<=': '>=', '>=': '<=', '=': '='}[relations[r]]

    n_slack = sum(1 for rel in relations if rel != '=')
    n_art = sum(1 for rel in relations if rel != '<=')
    width = n_y + n_slack + n_art
    T = np.zeros((n_rows, width + 1))
    T[:, :n_y] = rows
    T[:, -1] = rhs
    basis = np.zeros(n_rows, dtype=int)

    slack_col = n_y
    art_col = n_y + n_slack
    artificial = []
    for r, rel in enumerate(relations):
        if rel == '<=':
            T[r, slack_col] = 1.0
            basis[r] = slack_col
            slack_col += 1
        else:
            if rel == '>=':
                T[r, slack_col] = -1.0
                slack_col += 1
            T[r, art_col] = 1.0
            basis[r] = art_col
            artificial.append(art_col)
            art_col += 1

    if max_iter is None:
        max_iter = 50 * (n_rows + width) + 1000
    pivots = 0
    keep = np.ones(n_rows, dtype=bool)

    if artificial:
        phase_one = np.zeros(width)
        phase_one[artificial] = -1.0
        status, count = _run_simplex(T, basis, phase_one, tolerance, max_iter)
        pivots += count
        infeasibility = -phase_one[basis].dot(T[:, -1])
        if infeasibility > FEASIBILITY_TOLERANCE * max(1.0, float(np.abs(rhs).max(initial=0.0))):
            log.debug('Phase one ended with infeasibility %g', infeasibility)
            return LpSolution(INFEASIBLE, iterations=pivots)

        # drive artificial variables out of the basis, drop redundant rows
        first_artificial = n_y + n_slack
        for r in range(n_rows):
            if basis[r] < first_artificial:
                continue
            entries = np.flatnonzero(np.abs(T[r, :first_artificial]) > tolerance)
            if len(entries):
                _pivot(T, r, entries[0])
                basis[r] = entries[0]
                pivots += 1
            else:
                keep[r] = False
        T = np.delete(T[keep], np.arange(first_artificial, width), axis=1)
        basis = basis[keep]
        width = first_artificial

    phase_two = np.zeros(width)
    phase_two[:n_y] = cost
    status, count = _run_simplex(T, basis, phase_two, tolerance, max_iter)
    pivots += count
    log.debug('Simplex: %d rows, %d columns, %d pivots, %s',
              n_rows, width, pivots, status)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, iterations=pivots)

    y = _basic_solution(_slack_form(rows, relations)[keep], rhs[keep], basis, T[:, -1])
    x = shift + M.dot(y[:n_y])
    x = np.clip(x, [lo for lo, _ in lp.bounds], [hi for _, hi in lp.bounds])
    return LpSolution(OPTIMAL, x, float(lp.objective.dot(x)), pivots)


def _solve_highs(lp):
    A, relations, b = lp.matrix()
    upper = [r for r, rel in enumerate(relations) if rel == '<=']
    lower = [r for r, rel in enumerate(relations) if rel == '>=']
    equal = [r for r, rel in enumerate(relations) if rel == '=']

    A_ub = np.vstack([A[upper], -A[lower]]) if upper or lower else None
    b_ub = np.concatenate([b[upper], -b[lower]]) if upper or lower else None
    bounds = [(None if lo == -math.inf else lo, None if hi == math.inf else hi)
              for lo, hi in lp.bounds]

    result = optimize.linprog(-lp.objective, A_ub=A_ub, b_ub=b_ub,
                              A_eq=A[equal] if equal else None,
                              b_eq=b[equal] if equal else None,
                              bounds=bounds, method='highs')
    if result.status == 0:
        x = np.asarray(result.x, dtype=float)
        return LpSolution(OPTIMAL, x, float(lp.objective.dot(x)),
                          int(getattr(result, 'nit', 0)), 'highs')
    if result.status == 2:
        return LpSolution(INFEASIBLE, method='highs')
    if result.status == 3:
        return LpSolution(UNBOUNDED, method='highs')
    raise errors.NumericalFailure('HiGHS failed: %s' % result.message)
