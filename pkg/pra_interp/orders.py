"""
Definable linear orders on semilinear domains.

A DefinableOrder carries its domain as a semilinear set over the left
variables and a strict order formula over the left and right variables.
The VD*-rank is computed by iterated condensation: x and y are identified at
step alpha + 1 when only finitely many condensation classes of step alpha lie
between them.  Classes are counted through their lexicographically least
members, so every step stays first order.
"""
from dataclasses import dataclass
from math import isqrt
import logging

from .errors import (InternalRankBoundViolation, NotALinearOrder,
                     NotOmegaType)
from . import formula as fm
from . import qelim as qe
from .counting import finiteness_formula, pw_restrict, section_count
from .dimension import default_variables
from .semilinear import (FundamentalLattice, SemilinearSet, from_formula,
                         is_finite, size, to_formula)

_LOGGER = logging.getLogger(__name__)


def full_domain(m):
    gens = tuple(tuple(int(i == j) for i in range(m)) for j in range(m))
    return SemilinearSet(m, (FundamentalLattice((0,) * m, gens),))


@dataclass(frozen=True)
class DefinableOrder:
    m: int
    domain: SemilinearSet
    rel: object
    left_vars: tuple = ()
    right_vars: tuple = ()

    def __post_init__(self):
        if self.domain.dim != self.m:
            raise ValueError('domain lives in N^%d, order in N^%d'
                             % (self.domain.dim, self.m))
        left = tuple(self.left_vars or default_variables('a', self.m))
        right = tuple(self.right_vars or default_variables('b', self.m))
        if len(left) != self.m or len(right) != self.m:
            raise ValueError('an order on N^%d needs %d + %d variables'
                             % (self.m, self.m, self.m))
        object.__setattr__(self, 'left_vars', left)
        object.__setattr__(self, 'right_vars', right)

    def dom(self, xs):
        return to_formula(self.domain, xs)

    def less(self, xs, ys):
        mapping = dict(zip(self.left_vars, xs))
        mapping.update(zip(self.right_vars, ys))
        return fm.rename(self.rel, mapping)

    def fresh_tuple(self):
        return [fm.fresh('_t') for _ in range(self.m)]


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    condensations: tuple
    class_count: int


def _equal(xs, ys):
    return fm.conj([fm.Eq(fm.Var(x), fm.Var(y)) for x, y in zip(xs, ys)])


def lex_less(xs, ys):
    cases = []
    for i in range(len(xs)):
        cases.append(fm.conj([_equal(xs[:i], ys[:i]),
                              fm.Lt(fm.Var(xs[i]), fm.Var(ys[i]))]))
    return fm.disj(cases)


def lex_order(m):
    left = default_variables('a', m)
    right = default_variables('b', m)
    return DefinableOrder(m, full_domain(m), lex_less(left, right),
                          tuple(left), tuple(right))


def standard_order():
    return lex_order(1)


def linear_order_checks(O):
    a, b, c = O.fresh_tuple(), O.fresh_tuple(), O.fresh_tuple()
    sentences = [
        ('irreflexive', fm.forall(a, fm.Implies(
            O.dom(a), fm.Not(O.less(a, a))))),
        ('transitive', fm.forall(a + b + c, fm.Implies(
            fm.conj([O.dom(a), O.dom(b), O.dom(c),
                     O.less(a, b), O.less(b, c)]),
            O.less(a, c)))),
        ('total', fm.forall(a + b, fm.Implies(
            fm.And(O.dom(a), O.dom(b)),
            fm.disj([O.less(a, b), _equal(a, b), O.less(b, a)])))),
    ]
    return [(name, s, qe.decide(s)) for name, s in sentences]


def check_linear_order(O):
    return all(verdict for _, _, verdict in linear_order_checks(O))


def _require_linear(O):
    checks = linear_order_checks(O)
    failed = [name for name, _, verdict in checks if not verdict]
    if failed:
        raise NotALinearOrder('not a strict linear order: %s fails'
                              % ', '.join(failed), checks)


# Condensation -------------------------------------------------------------------

def _equivalent(O, equiv, xs, ys):
    mapping = dict(zip(O.left_vars, xs))
    mapping.update(zip(O.right_vars, ys))
    return fm.rename(equiv, mapping)


def representatives(O, equiv):
    """Lexicographically least members of the classes of equiv, as a
    quantifier-free formula over the left variables."""
    xs = list(O.left_vars)
    c = O.fresh_tuple()
    least = fm.forall(c, fm.Implies(
        fm.And(O.dom(c), _equivalent(O, equiv, c, xs)),
        fm.Not(lex_less(c, xs))))
    return qe.eliminate(fm.And(O.dom(xs), least))


def condense(O, equiv, reps):
    """The next condensation: finitely many classes of equiv in between."""
    a, b = list(O.left_vars), list(O.right_vars)
    c = O.fresh_tuple()
    rep_c = fm.rename(reps, dict(zip(O.left_vars, c)))
    between = fm.Or(fm.And(O.less(a, c), O.less(c, b)),
                    fm.And(O.less(b, c), O.less(c, a)))
    body = fm.conj([O.dom(a), O.dom(b),
                    finiteness_formula(fm.And(rep_c, between), c)])
    return qe.eliminate(body)


def vd_rank(O):
    _require_linear(O)
    equiv = _equal(O.left_vars, O.right_vars)
    condensations = []
    alpha = 0
    while True:
        reps = representatives(O, equiv)
        classes = from_formula(reps, O.left_vars)
        if is_finite(classes):
            _LOGGER.debug('rank %d with %d classes', alpha, size(classes))
            return RankCertificate(alpha, tuple(condensations), size(classes))
        if alpha == O.m:
            raise InternalRankBoundViolation(
                'condensation still infinite after %d steps in N^%d'
                % (alpha, O.m))
        _LOGGER.debug('condensation round %d', alpha + 1)
        equiv = condense(O, equiv, reps)
        condensations.append(equiv)
        alpha += 1


def coarsening_checks(O, cert):
    """Decide that every condensation contains the previous one."""
    a, b = list(O.left_vars), list(O.right_vars)
    chain = [_equal(a, b)] + list(cert.condensations)
    checks = []
    for k in range(len(chain) - 1):
        sentence = fm.forall(a + b, fm.Implies(
            fm.conj([O.dom(a), O.dom(b), chain[k]]), chain[k + 1]))
        checks.append(('E%d in E%d' % (k, k + 1), sentence,
                       qe.decide(sentence)))
    return checks


def is_scattered(O):
    """Every definable linear order has a finite rank, hence is scattered."""
    vd_rank(O)
    return True


# Order type omega ---------------------------------------------------------------

def omega_checks(O):
    a, b, c = O.fresh_tuple(), O.fresh_tuple(), O.fresh_tuple()
    sentences = [
        ('no maximum', fm.forall(a, fm.Implies(O.dom(a), fm.exists(
            b, fm.And(O.dom(b), O.less(a, b)))))),
        ('finite predecessors', fm.forall(a, fm.Implies(
            O.dom(a), finiteness_formula(fm.And(O.dom(c), O.less(c, a)),
                                         c)))),
    ]
    return [(name, s, qe.decide(s)) for name, s in sentences]


def order_type_iso(O):
    """Piecewise polynomial isomorphism from an order of type omega onto
    (N, <): the number of predecessors of each element."""
    cert = vd_rank(O)
    if cert.rank != 1:
        raise NotOmegaType('rank %d, order type omega has rank 1' % cert.rank)
    failed = [name for name, _, verdict in omega_checks(O) if not verdict]
    if failed:
        raise NotOmegaType('not of order type omega: %s fails'
                           % ', '.join(failed))
    zs = O.fresh_tuple()
    xs = list(O.left_vars)
    below = qe.eliminate(fm.conj([O.dom(zs), O.dom(xs), O.less(zs, xs)]))
    S = from_formula(below, zs + xs)
    result = pw_restrict(section_count(S, O.m), O.domain)
    assert result.degree() <= O.m
    return result


def first_elements(O, count):
    """The first count elements in the order, by repeated extraction of the
    definable minimum above the previous element."""
    xs, ps, ys = list(O.left_vars), O.fresh_tuple(), O.fresh_tuple()
    least = fm.forall(ys, fm.Implies(fm.And(O.dom(ys), O.less(ys, xs)),
                                     fm.FALSE))
    above = fm.forall(ys, fm.Implies(
        fm.conj([O.dom(ys), O.less(ps, ys), O.less(ys, xs)]), fm.FALSE))
    first = qe.eliminate(fm.And(O.dom(xs), least))
    step = qe.eliminate(fm.conj([O.dom(xs), O.less(ps, xs), above]))
    found = []
    current = first
    while len(found) < count:
        points = from_formula(current, xs).pieces
        if not points:
            break
        assert len(points) == 1 and not points[0].generators
        found.append(points[0].base)
        current = fm.substitute(step, {p: fm.Num(v)
                                       for p, v in zip(ps, found[-1])})
    return found


# Cantor orders ------------------------------------------------------------------

def cantor_order(i):
    if i not in (1, 2):
        raise ValueError('Cantor orders are numbered 1 and 2')
    a1, a2, b1, b2 = (fm.Var(v) for v in ('a1', 'a2', 'b1', 'b2'))
    first, second = (a2, b2) if i == 1 else (a1, b1)
    rel = fm.Or(fm.And(fm.Lt(first, second),
                       fm.Eq(fm.Add(a1, a2), fm.Add(b1, b2))),
                fm.Lt(fm.Add(a1, a2), fm.Add(b1, b2)))
    return DefinableOrder(2, full_domain(2), rel, ('a1', 'a2'), ('b1', 'b2'))


def cantor_eval(i, point):
    x, y = point
    if i == 2:
        x, y = y, x
    s = x + y
    return s * (s + 1) // 2 + y


def cantor_inverse(i, n):
    s = (isqrt(8 * n + 1) - 1) // 2
    y = n - s * (s + 1) // 2
    x = s - y
    return (x, y) if i == 1 else (y, x)
