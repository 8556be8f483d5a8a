"""
Shared constants, integer helpers and exact linear algebra over the
rationals.

Matrices are lists of rows with int or fractions.Fraction entries. The
linear algebra runs on sympy matrices and hands Fractions back. The engine
never touches floating point outside of the growth-rate fit in the dimension
module.
"""
from fractions import Fraction
from functools import reduce
from math import gcd
import random

import sympy as sp
# pylint: disable=C0103

# Number of disjuncts a DNF expansion inside quantifier elimination may
# produce before the engine falls back to plain Cooper elimination
CUBE_LIMIT = 64
# Seed of every generator used for generic points and verification samples
RANDOM_SEED = 20240817
# Fresh points checked after each polynomial interpolation
VERIFY_POINTS = 6
# Attempts at drawing a generic interior point of a cone
GENERIC_RETRIES = 25
# Box used by the generator-inspection cross-check of infinite sections
CROSS_CHECK_BOX = 6
# Numerals up to this value are desugared through the successor chain
UNARY_NUMERAL_LIMIT = 16
# Scalar multiples up to this coefficient are desugared as repeated sums
UNARY_SCALAR_LIMIT = 8


def make_rng(salt=0):
    return random.Random(RANDOM_SEED + salt)


def lcm(a, b):
    a, b = abs(a), abs(b)
    if a == 0 or b == 0:
        return max(a, b)
    return a // gcd(a, b) * b


def lcm_all(values, start=1):
    return reduce(lcm, values, start)


def gcd_all(values):
    return reduce(gcd, (abs(v) for v in values), 0)


def ceil_div(a, b):
    return -((-a) // b)


def _rational(x):
    x = Fraction(x)
    return sp.Rational(x.numerator, x.denominator)


def _matrix(rows):
    return sp.Matrix([[_rational(x) for x in row] for row in rows])


def _fraction(x):
    return Fraction(int(x.p), int(x.q))


def rank(rows):
    if not rows or not rows[0]:
        return 0
    return _matrix(rows).rank()


def nullspace(rows, ncols):
    """Basis of {v : rows.v = 0} as lists of Fractions."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)]
                for i in range(ncols)]
    return [[_fraction(x) for x in v] for v in _matrix(rows).nullspace()]


def solve(rows, rhs):
    """One solution of rows.x = rhs (free variables at zero), or None."""
    try:
        sol, params = _matrix(rows).gauss_jordan_solve(
            _matrix([[b] for b in rhs]))
    except ValueError:
        return None
    sol = sol.xreplace({t: 0 for t in params})
    return [_fraction(x) for x in sol]


def inverse(square):
    """Exact inverse; raises ZeroDivisionError on a singular matrix."""
    M = _matrix(square)
    if M.det() == 0:
        raise ZeroDivisionError('singular matrix')
    return [[_fraction(x) for x in M.inv().row(i)] for i in range(M.rows)]


def determinant(square):
    return _fraction(_matrix(square).det())


def primitive(vector):
    """Smallest integer vector positively proportional to a rational one."""
    fr = [Fraction(x) for x in vector]
    den = lcm_all(x.denominator for x in fr)
    ints = [int(x * den) for x in fr]
    g = gcd_all(ints)
    if g == 0:
        return ints
    return [x // g for x in ints]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def as_int(x):
    """Integer value of an int or Fraction, None when not integral."""
    x = Fraction(x)
    if x.denominator != 1:
        return None
    return x.numerator
