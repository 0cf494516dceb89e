###############################################################################
# Copyright 2026 The ihw.py developers. All rights reserved.
# This file is part of the ihw.py project.
# Use of this source code is governed by the license found in the LICENSE file.
###############################################################################

"""
Exception hierarchy for ihw.py

Everything raised on purpose by the library derives from IhwError. Data
problems are ValidationErrors, usage problems are ConfigErrors and the linear
programming layer raises LpErrors.
"""


class IhwError(Exception):
    pass


class ValidationError(IhwError, ValueError):
    pass


class ConfigError(IhwError, ValueError):
    pass


class LpError(IhwError):
    pass


class PValueOutOfRange(ValidationError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super(PValueOutOfRange, self).__init__(
            'p-value at index %d is %r, expected a number in [0, 1]'
            % (index, value))


class MissingValue(ValidationError):
    def __init__(self, index, field):
        self.index = index
        self.field = field
        super(MissingValue, self).__init__(
            'missing %s at index %d' % (field, index))


class MixedCovariateKinds(ValidationError):
    def __init__(self, index=None):
        self.index = index
        message = 'covariates mix numeric and categorical values'
        if index is not None:
            message += ' (first clash at index %d)' % index
        super(MixedCovariateKinds, self).__init__(message)


class EmptyFold(ValidationError):
    def __init__(self, fold):
        self.fold = fold
        super(EmptyFold, self).__init__('fold %d has no hypotheses' % fold)


class TooFewHypotheses(ValidationError):
    def __init__(self, m, K):
        self.m = m
        self.K = K
        super(TooFewHypotheses, self).__init__(
            'cannot split %d hypotheses into %d folds' % (m, K))


class MissingFoldLabels(ValidationError):
    def __init__(self):
        super(MissingFoldLabels, self).__init__(
            'user supplied fold strategy needs fold labels')


class NegativeWeight(ValidationError):
    def __init__(self, index, value=None):
        self.index = index
        self.value = value
        super(NegativeWeight, self).__init__(
            'weight at index %d is %r, expected a finite number >= 0'
            % (index, value))


class LengthMismatch(ValidationError):
    def __init__(self, *lengths):
        self.lengths = lengths
        super(LengthMismatch, self).__init__(
            'inputs have different lengths: %s'
            % ', '.join(str(n) for n in lengths))


class NonpositiveWeight(ValidationError):
    def __init__(self, index):
        self.index = index
        super(NonpositiveWeight, self).__init__(
            'block weight at index %d must be positive' % index)


class EmptyInput(ValidationError):
    def __init__(self, what='input'):
        super(EmptyInput, self).__init__('%s is empty' % what)


class OutOfDomain(ValidationError):
    def __init__(self, value, domain='[0, 1]'):
        self.value = value
        super(OutOfDomain, self).__init__(
            '%r lies outside %s' % (value, domain))


class TooManyBins(ValidationError):
    def __init__(self, J, distinct):
        self.J = J
        self.distinct = distinct
        super(TooManyBins, self).__init__(
            'requested %d bins but the covariate has only %d distinct values'
            % (J, distinct))


class InvalidConfig(ConfigError):
    pass


class ConfigMismatch(ConfigError):
    pass


class InvalidLevel(ConfigError):
    def __init__(self, level, name='alpha'):
        self.level = level
        super(InvalidLevel, self).__init__(
            '%s = %r must lie in (0, 1)' % (name, level))


class InvalidTauPrime(ConfigError):
    def __init__(self, tau_prime, tau):
        self.tau_prime = tau_prime
        self.tau = tau
        super(InvalidTauPrime, self).__init__(
            "tau' = %r must lie in [tau, 1) with tau = %r" % (tau_prime, tau))


class ScenarioError(ConfigError):
    def __init__(self, key, message=None, section=None):
        self.key = key
        self.section = section
        where = '[%s] ' % section if section else ''
        super(ScenarioError, self).__init__(
            '%s%s: %s' % (where, key, message or 'unknown scenario key'))


class DimensionMismatch(LpError, ValueError):
    pass


class InvalidProgram(LpError, ValueError):
    pass


class NumericalFailure(LpError, ArithmeticError):
    pass


class ParseError(ValidationError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = 'line %d: ' % line if line is not None else ''
        super(ParseError, self).__init__(where + message)
