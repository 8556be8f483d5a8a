"""
Piecewise polynomial counting functions.

section_count(S, n) is the number of points of S above each parameter
vector b (the last coordinates of S).  Every fundamental lattice J of S
contributes the vector partition function of the parameter parts A_J of its
generators, shifted by the parameter part of its base.  Such a function is a
quasi-polynomial on the cells cut out by the hyperplanes spanned by columns
of A_J, with a period dividing the least common multiple of the minors of
A_J, so it is interpolated exactly on every residue class of every cell and
checked on fresh points afterwards.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
import logging

import sympy as sp

from .common import (CROSS_CHECK_BOX, VERIFY_POINTS, determinant, lcm_all,
                     make_rng, nullspace, primitive, rank, solve)
from .errors import BadSplit, InternalConsistencyError, NotAFunction
from . import formula as fm
from . import qelim as qe
from .semilinear import (FundamentalLattice, SemilinearSet,
                         coefficient_forms, disjointify, from_formula,
                         is_finite, lattice_from_json, lattice_to_json,
                         member, piece_node, size, to_formula, to_node)
from . import semilinear

_LOGGER = logging.getLogger(__name__)


class Value(Enum):
    INFINITE = 'infinite'
    UNDEFINED = 'undefined'


INFINITE = Value.INFINITE
UNDEFINED = Value.UNDEFINED


def parameter_symbols(m):
    return sp.symbols('b1:%d' % (m + 1))


def poly_degree(poly):
    return 0 if poly.is_zero else int(poly.total_degree())


def poly_value(poly, point):
    total = Fraction(0)
    for exps, coeff in poly.terms():
        term = Fraction(int(coeff.p), int(coeff.q))
        for x, e in zip(point, exps):
            term *= x ** e
        total += term
    return total


@dataclass(frozen=True)
class PiecewisePolynomial:
    param_dim: int
    pieces: tuple
    infinite: SemilinearSet
    degree_bound: int

    def __post_init__(self):
        for lattice, poly in self.pieces:
            if lattice.dim != self.param_dim:
                raise ValueError('piece outside N^%d' % self.param_dim)
            if poly_degree(poly) > self.degree_bound:
                raise InternalConsistencyError(
                    'degree %d exceeds the bound %d'
                    % (poly_degree(poly), self.degree_bound))

    def degree(self):
        return max([poly_degree(p) for _, p in self.pieces] + [0])


def eval_pwpoly(P, point):
    point = tuple(point)
    if member(P.infinite, point):
        return INFINITE
    for lattice, poly in P.pieces:
        if lattice.coefficients(point) is not None:
            value = poly_value(poly, point)
            if value.denominator != 1:
                raise InternalConsistencyError(
                    'non-integral value %s at %r' % (value, point))
            return int(value)
    return UNDEFINED


# Brute force counts ----------------------------------------------------------

def _count_solutions(columns, target):
    """Number of l in N^s with sum(l_j * columns[j]) = target; every column
    is non-negative and non-zero."""
    return _solutions(tuple(tuple(c) for c in columns), tuple(target))


@lru_cache(maxsize=1 << 16)
def _solutions(columns, target):
    if any(t < 0 for t in target):
        return 0
    if not columns:
        return int(all(t == 0 for t in target))
    first, rest = columns[0], columns[1:]
    total = 0
    current = target
    while all(t >= 0 for t in current):
        total += _solutions(rest, current)
        current = tuple(t - c for t, c in zip(current, first))
    return total


def _projects_onto(lattice, n, point):
    """Whether point is the parameter part of some member of lattice."""
    columns = [g[n:] for g in lattice.generators if any(g[n:])]
    target = [p - c for p, c in zip(point, lattice.base[n:])]
    return _count_solutions(columns, target) > 0


def brute_section_count(S, n, point):
    """|{z : (z, point) in S}|, INFINITE when the section is unbounded."""
    total = 0
    for lattice in S.pieces:
        if not _projects_onto(lattice, n, point):
            continue
        if any(not any(g[n:]) for g in lattice.generators):
            return INFINITE
        columns = [g[n:] for g in lattice.generators]
        target = [p - c for p, c in zip(point, lattice.base[n:])]
        total += _count_solutions(columns, target)
    return total


# Cells -----------------------------------------------------------------------

def _walls(columns, offset, m):
    """Hyperplanes (h, h.offset) bounding the cells of one partition
    function."""
    walls = []
    r = rank(columns)
    basis = []
    for c in columns:
        if rank(basis + [c]) > len(basis):
            basis.append(c)
    for subset in combinations(columns, r - 1) if r else ():
        if rank(list(subset)) < r - 1:
            continue
        # h = sum(beta_i * basis_i) orthogonal to the chosen columns
        system = [[sum(a * b for a, b in zip(col, base)) for base in basis]
                  for col in subset]
        beta = nullspace(system, len(basis))
        if len(beta) != 1:
            continue
        h = [sum(b * base[i] for b, base in zip(beta[0], basis))
             for i in range(m)]
        walls.append(primitive(h))
    walls.extend(primitive(v) for v in nullspace(columns, m))
    result = []
    for h in walls:
        k = next(i for i, x in enumerate(h) if x)
        if h[k] < 0:
            h = [-x for x in h]
        wall = (tuple(h), sum(a * b for a, b in zip(h, offset)))
        if wall not in result:
            result.append(wall)
    return result


def _period(columns, m):
    r = rank(columns)
    dets = []
    for rows in combinations(range(m), r):
        for cols in combinations(columns, r):
            d = determinant([[c[i] for c in cols] for i in rows])
            if d:
                dets.append(abs(int(d)))
    return lcm_all(dets)


def _cells(walls, params, region):
    cells = [region]
    for h, h0 in walls:
        coeffs = {v: a for v, a in zip(params, h) if a}
        signs = [qe.mk_le(coeffs, 1 - h0),
                 qe.mk_eq(coeffs, -h0),
                 qe.mk_le({v: -a for v, a in coeffs.items()}, h0 + 1)]
        refined = []
        for cell in cells:
            for sign in signs:
                candidate = qe.mk_and([cell, sign])
                if candidate == qe.FALSE:
                    continue
                if qe.satisfiable(qe.to_surface(candidate)):
                    refined.append(candidate)
        cells = refined
    return cells


# Interpolation -----------------------------------------------------------------

def _monomials(t, degree):
    return [e for e in product(range(degree + 1), repeat=t)
            if sum(e) <= degree]


def _monomial_value(exps, point):
    value = 1
    for x, e in zip(point, exps):
        value *= x ** e
    return value


def _fit(lattice, degree, oracle, rng):
    """Polynomial in the lattice coordinates agreeing with oracle."""
    t = len(lattice.generators)
    monomials = _monomials(t, degree)
    grid = monomials
    rows = [[_monomial_value(e, k) for e in monomials] for k in grid]
    values = [oracle(lattice.point(k)) for k in grid]
    coeffs = solve(rows, values)
    if coeffs is None:
        raise InternalConsistencyError('interpolation system is singular')
    fresh = [k for k in product(range(degree + 2), repeat=t)
             if sum(k) in (degree + 1, degree + 2)][:VERIFY_POINTS]
    fresh += [tuple(rng.randint(0, 12) for _ in range(t))
              for _ in range(VERIFY_POINTS)]
    for k in fresh:
        fitted = sum(c * _monomial_value(e, k)
                     for c, e in zip(coeffs, monomials))
        if fitted != oracle(lattice.point(k)):
            raise InternalConsistencyError(
                'interpolated count disagrees at %r' % (lattice.point(k),))
    return dict(zip(monomials, coeffs))


def _to_parameters(coeffs, lattice, symbols):
    names = [str(s) for s in symbols]
    table = dict(zip(names, symbols))
    forms, D = coefficient_forms(lattice, names)
    kappa = [(sum(c * table[v] for v, c in fc.items()) + fk) / sp.Integer(D)
             for fc, fk in forms]
    expr = sp.Integer(0)
    for exps, c in coeffs.items():
        if not c:
            continue
        term = sp.Rational(c.numerator, c.denominator)
        for k, e in zip(kappa, exps):
            term *= k ** e
        expr += term
    return sp.Poly(sp.expand(expr), *symbols, domain='QQ')


def _residue_sublattices(lattice, period):
    if period == 1 or not lattice.generators:
        return [lattice]
    result = []
    for rho in product(range(period), repeat=len(lattice.generators)):
        base = lattice.point(rho)
        gens = tuple(tuple(period * x for x in g) for g in lattice.generators)
        result.append(FundamentalLattice(base, gens))
    return result


# Section counts ------------------------------------------------------------------

def infinite_region(S, n):
    k = S.dim
    zs = ['_z%d' % i for i in range(n)]
    bs = ['_b%d' % i for i in range(k - n)]
    bound = fm.fresh('_N')
    body = fm.And(fm.Lt(fm.Var(bound), fm.plus(*zs)), to_formula(S, zs + bs))
    unbounded = fm.Forall(bound, fm.exists(zs, body))
    region = from_formula(qe.eliminate(unbounded), bs)
    for b in product(range(CROSS_CHECK_BOX + 1), repeat=k - n):
        by_generators = brute_section_count(S, n, b) is INFINITE
        if by_generators != member(region, b):
            raise InternalConsistencyError(
                'infinite sections disagree at %r' % (b,))
    return region


def section_count(S, n):
    """Piecewise polynomial |{z in N^n : (z, b) in S}| of b in N^m."""
    k = S.dim
    if not 0 < n < k:
        raise BadSplit('split %d outside 1..%d' % (n, k - 1))
    m = k - n
    params = ['_b%d' % i for i in range(m)]
    symbols = parameter_symbols(m)
    region = infinite_region(S, n)
    finite = [J for J in S.pieces
              if all(any(g[n:]) for g in J.generators)]
    walls, period, degree = [], 1, 0
    for J in finite:
        columns = [list(g[n:]) for g in J.generators]
        for wall in _walls(columns, J.base[n:], m):
            if wall not in walls:
                walls.append(wall)
        if columns:
            period = lcm_all([period, _period(columns, m)])
        degree = max(degree, len(columns) - rank(columns))
    assert degree <= n
    _LOGGER.debug('section count: %d finite pieces, %d walls, period %d, '
                  'degree %d', len(finite), len(walls), period, degree)

    @lru_cache(maxsize=None)
    def oracle(point):
        value = brute_section_count(S, n, point)
        assert value is not INFINITE
        return value

    rng = make_rng(k)
    outside = qe.negate(to_node(region, params))
    pieces = []
    for cell in _cells(walls, params, outside):
        cell_set = from_formula(qe.to_surface(cell), params)
        for lattice in cell_set.pieces:
            for sub in _residue_sublattices(lattice, period):
                coeffs = _fit(sub, degree, oracle, rng)
                pieces.append((sub, _to_parameters(coeffs, sub, symbols)))
    pieces.sort(key=lambda item: item[0].sort_key())
    return PiecewisePolynomial(m, tuple(pieces), region, n)


def partition_function(A):
    """phi_A(u) = |{l in N^n : A l = u}| for a non-negative d x n matrix."""
    rows = [list(r) for r in A]
    if not rows or not rows[0]:
        raise ValueError('partition functions need a non-empty matrix')
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError('matrix rows differ in length')
    d, n = len(rows), len(rows[0])
    if any(x < 0 for r in rows for x in r):
        raise ValueError('partition functions need non-negative entries')
    gens = []
    for j in range(n):
        gens.append(tuple([int(i == j) for i in range(n)]
                          + [rows[i][j] for i in range(d)]))
    S = SemilinearSet(n + d, (FundamentalLattice((0,) * (n + d),
                                                 tuple(gens)),))
    bound = n - int(sp.Matrix(rows).rank())
    result = section_count(S, n)
    if result.degree() > bound:
        raise InternalConsistencyError('partition function of degree %d '
                                       'exceeds %d' % (result.degree(), bound))
    return PiecewisePolynomial(d, result.pieces, result.infinite, bound)


# Closure operations --------------------------------------------------------------

def _variables(m):
    return ['_b%d' % i for i in range(m)]


def pw_restrict(P, T):
    """P restricted to the definable subset T of its parameter space."""
    params = _variables(P.param_dim)
    region = to_node(T, params)
    pieces = []
    for lattice, poly in P.pieces:
        inner = qe.mk_and([piece_node(lattice, params), region])
        for sub in from_formula(qe.to_surface(inner), params).pieces:
            pieces.append((sub, poly))
    infinite = from_formula(qe.to_surface(qe.mk_and([
        to_node(P.infinite, params), region])), params)
    pieces.sort(key=lambda item: item[0].sort_key())
    return PiecewisePolynomial(P.param_dim, tuple(pieces), infinite,
                               P.degree_bound)


def pw_add(P, Q):
    """Sum on the common domain; infinite wherever either is infinite."""
    if P.param_dim != Q.param_dim:
        raise ValueError('parameter dimensions differ')
    params = _variables(P.param_dim)
    infinite = SemilinearSet(P.param_dim, tuple(disjointify(
        P.infinite.pieces + Q.infinite.pieces)))
    outside = qe.negate(to_node(infinite, params))
    pieces = []
    for l1, p1 in P.pieces:
        for l2, p2 in Q.pieces:
            inner = qe.mk_and([piece_node(l1, params), piece_node(l2, params),
                               outside])
            if inner == qe.FALSE:
                continue
            for sub in from_formula(qe.to_surface(inner), params).pieces:
                pieces.append((sub, p1 + p2))
    pieces.sort(key=lambda item: item[0].sort_key())
    return PiecewisePolynomial(P.param_dim, tuple(pieces), infinite,
                               max(P.degree_bound, Q.degree_bound))


# Definable functions -------------------------------------------------------------

def function_pieces(graph, value_var, arg_vars):
    """Piecewise linear form of the function whose graph is defined by graph."""
    arg_vars = list(arg_vars)
    other = fm.fresh()
    same = fm.forall(arg_vars + [value_var, other], fm.Implies(
        fm.And(graph, fm.rename(graph, {value_var: other})),
        fm.Eq(fm.Var(value_var), fm.Var(other))))
    if not qe.decide(qe.closure(same)):
        raise NotAFunction('formula is not the graph of a function')
    S = from_formula(graph, [value_var] + arg_vars)
    m = len(arg_vars)
    symbols = parameter_symbols(m)
    pieces = []
    for J in S.pieces:
        projected = FundamentalLattice(J.base[1:],
                                       tuple(g[1:] for g in J.generators))
        coeffs = {tuple(0 for _ in J.generators): Fraction(J.base[0])}
        for j, g in enumerate(J.generators):
            exps = tuple(int(i == j) for i in range(len(J.generators)))
            coeffs[exps] = Fraction(g[0])
        pieces.append((projected, _to_parameters(coeffs, projected, symbols)))
    pieces.sort(key=lambda item: item[0].sort_key())
    return PiecewisePolynomial(m, tuple(pieces), SemilinearSet(m, ()), 1)


def slopes(P):
    """Slopes of a unary piecewise linear function on its infinite pieces."""
    if P.param_dim != 1:
        raise ValueError('slopes are defined for unary functions')
    (b,) = parameter_symbols(1)
    result = []
    for lattice, poly in P.pieces:
        if not lattice.generators:
            continue
        if poly_degree(poly) > 1:
            raise ValueError('piece of degree %d is not linear'
                             % poly_degree(poly))
        c = poly.coeff_monomial(b)
        result.append(Fraction(int(sp.Rational(c).p), int(sp.Rational(c).q)))
    return result


# Counting quantifier elimination ---------------------------------------------------

def finiteness_formula(body, counted):
    """'Only finitely many tuples of counted satisfy body'."""
    bound = fm.fresh('_N')
    return fm.Exists(bound, fm.forall(counted, fm.Implies(
        body, fm.Leq(fm.plus(*counted), fm.Var(bound)))))


def _linear_equation(y, poly, params, symbols):
    constant = sp.Rational(poly.coeff_monomial(1))
    terms = [(v, sp.Rational(poly.coeff_monomial(s)))
             for v, s in zip(params, symbols)]
    D = lcm_all([int(constant.q)] + [int(c.q) for _, c in terms])
    coeffs = {y: D}
    for v, c in terms:
        coeffs[v] = coeffs.get(v, 0) - int(c * D)
    return qe.mk_eq(coeffs, -int(constant * D))


def _eliminate_count(y, z, body):
    params = sorted(fm.free_vars(body) - {z})
    if not params:
        S = from_formula(body, [z])
        if not is_finite(S):
            return fm.FALSE
        return fm.Eq(fm.Var(y), fm.Num(size(S)))
    S = from_formula(body, [z] + params)
    P = section_count(S, 1)
    symbols = parameter_symbols(len(params))
    cases = []
    for lattice, poly in P.pieces:
        if poly_degree(poly) > 1:
            raise InternalConsistencyError('count of one variable of degree %d'
                                           % poly_degree(poly))
        cases.append(qe.mk_and([piece_node(lattice, params),
                                _linear_equation(y, poly, params, symbols)]))
    return qe.to_surface(qe.mk_or(cases))


def eliminate_counting(f):
    """Equivalent formula without counting quantifiers, innermost first."""
    if isinstance(f, fm.Count):
        body = eliminate_counting(f.body)
        _LOGGER.debug('eliminating count %s %s', f.count_var, f.bound_var)
        return _eliminate_count(f.count_var, f.bound_var, body)
    if isinstance(f, fm.Not):
        return fm.Not(eliminate_counting(f.body))
    if isinstance(f, fm.BINARY):
        return type(f)(eliminate_counting(f.left), eliminate_counting(f.right))
    if isinstance(f, fm.QUANTIFIERS):
        return type(f)(f.var, eliminate_counting(f.body))
    return f


# JSON --------------------------------------------------------------------------------

def poly_to_json(poly):
    return {'monomials': [{'coef': str(c), 'exps': [str(e) for e in exps]}
                          for exps, c in poly.terms() if c != 0]}


def poly_from_json(data, symbols):
    expr = sp.Integer(0)
    for mono in data['monomials']:
        term = sp.Rational(mono['coef'])
        for s, e in zip(symbols, mono['exps']):
            term *= s ** int(e)
        expr += term
    return sp.Poly(expr, *symbols, domain='QQ')


def to_json(P):
    return {'paramDim': P.param_dim,
            'degreeBound': P.degree_bound,
            'pieces': [{'lattice': lattice_to_json(l), 'poly': poly_to_json(p)}
                       for l, p in P.pieces],
            'infinite': semilinear.to_json(P.infinite)}


def from_json(data):
    m = int(data['paramDim'])
    symbols = parameter_symbols(m)
    pieces = tuple((lattice_from_json(p['lattice']),
                    poly_from_json(p['poly'], symbols))
                   for p in data['pieces'])
    return PiecewisePolynomial(m, pieces, semilinear.from_json(data['infinite']),
                               int(data.get('degreeBound', 0)) or
                               max([poly_degree(p) for _, p in pieces] + [0]))
