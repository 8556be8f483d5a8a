"""
Translations of the signature (=, +) into (N, +).

A Translation of dimension m sends every element to an m-tuple: dom is a
formula over the a-tuple, eq a formula over the a- and b-tuples and plus a
formula over the c-, a- and b-tuples (c = a + b).  One-dimensional
translations are certified by building the isomorphism onto (N, +) as the
number of predecessors in the translated order, which is first order once
the counting quantifier is eliminated.
"""
from dataclasses import dataclass, field
from math import isqrt
import logging

import numpy as np

from .errors import (BasicsFailed, FiniteDomain, NotAModel, SignatureMismatch,
                     SquareInput, UnsupportedCounting)
from . import formula as fm
from . import qelim as qe
from .counting import eliminate_counting
from .dimension import bijection_to_cube, default_variables, dim
from .orders import cantor_eval, cantor_inverse, lex_less
from .semilinear import from_formula, is_finite

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Translation:
    m: int
    dom: object
    eq: object
    plus: object
    a: tuple = ()
    b: tuple = ()
    c: tuple = ()

    def __post_init__(self):
        if self.m < 1:
            raise ValueError('translations have dimension >= 1')
        for name in ('a', 'b', 'c'):
            names = tuple(getattr(self, name) or
                          default_variables(name, self.m))
            if len(names) != self.m:
                raise ValueError('%s-tuple of length %d in dimension %d'
                                 % (name, len(names), self.m))
            object.__setattr__(self, name, names)

    def dom_at(self, xs):
        return fm.rename(self.dom, dict(zip(self.a, xs)))

    def eq_at(self, xs, ys):
        mapping = dict(zip(self.a, xs))
        mapping.update(zip(self.b, ys))
        return fm.rename(self.eq, mapping)

    def plus_at(self, zs, xs, ys):
        mapping = dict(zip(self.c, zs))
        mapping.update(zip(self.a, xs))
        mapping.update(zip(self.b, ys))
        return fm.rename(self.plus, mapping)

    def fresh_tuple(self):
        return [fm.fresh('_e') for _ in range(self.m)]


def translation_from_json(data):
    names = data.get('vars', {})
    return Translation(int(data['m']), fm.parse(data['dom']),
                       fm.parse(data['eq']), fm.parse(data['plus']),
                       tuple(names.get('a', ())), tuple(names.get('b', ())),
                       tuple(names.get('c', ())))


def translation_to_json(t):
    return {'m': t.m, 'dom': fm.render(t.dom), 'eq': fm.render(t.eq),
            'plus': fm.render(t.plus),
            'vars': {'a': list(t.a), 'b': list(t.b), 'c': list(t.c)}}


# Translating formulas ------------------------------------------------------------

def _tuple_for(t, name):
    if t.m == 1:
        return [name]
    return ['%s_%d' % (name, i + 1) for i in range(t.m)]


def _translate_term(t, term, witnesses):
    """Tuple of variables standing for term; sums get fresh witnesses."""
    if isinstance(term, fm.Var):
        return _tuple_for(t, term.name)
    left = _translate_term(t, term.left, witnesses)
    right = _translate_term(t, term.right, witnesses)
    result = t.fresh_tuple()
    witnesses.append((result, fm.And(t.dom_at(result),
                                     t.plus_at(result, left, right))))
    return result


def _translate(t, f):
    if isinstance(f, (fm.Top, fm.Bottom)):
        return f
    if isinstance(f, fm.Eq):
        witnesses = []
        left = _translate_term(t, f.left, witnesses)
        right = _translate_term(t, f.right, witnesses)
        body = fm.conj([d for _, d in witnesses] + [t.eq_at(left, right)])
        return fm.exists([v for names, _ in witnesses for v in names], body)
    if isinstance(f, fm.Not):
        return fm.Not(_translate(t, f.body))
    if isinstance(f, fm.BINARY):
        return type(f)(_translate(t, f.left), _translate(t, f.right))
    xs = _tuple_for(t, f.var)
    body = _translate(t, f.body)
    if isinstance(f, fm.Exists):
        return fm.exists(xs, fm.And(t.dom_at(xs), body))
    return fm.forall(xs, fm.Implies(t.dom_at(xs), body))


def translate_formula(t, f):
    """Relativised translation; the extended language is desugared first."""
    if not fm.is_core(f):
        try:
            f = fm.desugar(f)
        except UnsupportedCounting as err:
            raise SignatureMismatch(str(err))
    if not fm.is_core(f):
        raise SignatureMismatch('formula outside the signature (=, +)')
    return _translate(t, f)


# Basic conditions -----------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(verdict for _, _, verdict in self.checks)


def verify_basics(t):
    a, b, c = t.fresh_tuple(), t.fresh_tuple(), t.fresh_tuple()
    a2, b2, c2 = t.fresh_tuple(), t.fresh_tuple(), t.fresh_tuple()

    def doms(*tuples):
        return fm.conj([t.dom_at(x) for x in tuples])

    sentences = [
        ('domain nonempty', fm.exists(a, t.dom_at(a))),
        ('eq reflexive', fm.forall(a, fm.Implies(doms(a), t.eq_at(a, a)))),
        ('eq symmetric', fm.forall(a + b, fm.Implies(
            fm.And(doms(a, b), t.eq_at(a, b)), t.eq_at(b, a)))),
        ('eq transitive', fm.forall(a + b + c, fm.Implies(
            fm.conj([doms(a, b, c), t.eq_at(a, b), t.eq_at(b, c)]),
            t.eq_at(a, c)))),
        ('plus total', fm.forall(a + b, fm.Implies(doms(a, b), fm.exists(
            c, fm.And(t.dom_at(c), t.plus_at(c, a, b)))))),
        ('plus functional', fm.forall(a + b + c + c2, fm.Implies(
            fm.conj([doms(a, b, c, c2), t.plus_at(c, a, b),
                     t.plus_at(c2, a, b)]),
            t.eq_at(c, c2)))),
        ('plus respects eq', fm.forall(a + b + c + a2 + b2 + c2, fm.Implies(
            fm.conj([doms(a, b, c, a2, b2, c2), t.eq_at(a, a2),
                     t.eq_at(b, b2), t.plus_at(c, a, b),
                     t.plus_at(c2, a2, b2)]),
            t.eq_at(c, c2)))),
    ]
    return VerificationReport([(name, s, qe.decide(s))
                               for name, s in sentences])


# Normalisation ---------------------------------------------------------------------

def representatives(t):
    """Lexicographically least member of every eq-class, over the a-tuple."""
    xs = list(t.a)
    ys = t.fresh_tuple()
    least = fm.forall(ys, fm.Implies(
        fm.And(t.dom_at(ys), t.eq_at(ys, xs)), fm.Not(lex_less(ys, xs))))
    return qe.eliminate(fm.And(t.dom_at(xs), least))


def normalize(t):
    """Absolute translation kappa on N^m' and the isomorphism formula from t
    to kappa, over the a-tuple of t and z1 .. zm'."""
    report = verify_basics(t)
    if not report.ok:
        raise BasicsFailed(report)
    reps = representatives(t)
    classes = from_formula(reps, t.a)
    if is_finite(classes):
        raise FiniteDomain('the translation has %d elements'
                           % len(classes.pieces))
    k = dim(classes).dim
    zs = default_variables('z', k)
    cube = bijection_to_cube(classes, list(t.a), zs)
    r = t.fresh_tuple()

    def onto(xs, ws):
        """xs is sent to the cube point ws."""
        return fm.exists(r, fm.conj([
            fm.rename(reps, dict(zip(t.a, r))), t.eq_at(xs, r),
            fm.rename(cube, dict(list(zip(t.a, r)) + list(zip(zs, ws))))]))

    iso = qe.eliminate(fm.And(t.dom_at(list(t.a)), onto(list(t.a), zs)))
    kappa_a = default_variables('a', k)
    kappa_b = default_variables('b', k)
    kappa_c = default_variables('c', k)
    u, v, w = t.fresh_tuple(), t.fresh_tuple(), t.fresh_tuple()
    pulled = fm.exists(u + v + w, fm.conj([
        onto(u, kappa_a), onto(v, kappa_b), t.dom_at(w),
        t.plus_at(w, u, v), onto(w, kappa_c)]))
    kappa = Translation(
        k, fm.TRUE,
        fm.conj([fm.Eq(fm.Var(x), fm.Var(y))
                 for x, y in zip(kappa_a, kappa_b)]),
        qe.eliminate(pulled), tuple(kappa_a), tuple(kappa_b), tuple(kappa_c))
    _LOGGER.debug('normalised a %d-dimensional translation to dimension %d',
                  t.m, k)
    return kappa, iso


def is_absolute(t):
    """Domain true and coordinatewise equality, syntactically."""
    expected = fm.conj([fm.Eq(fm.Var(x), fm.Var(y))
                        for x, y in zip(t.a, t.b)])
    return t.dom == fm.TRUE and t.eq == expected


# Certification ----------------------------------------------------------------------

@dataclass(frozen=True)
class IsoCertificate:
    iso: object
    variable: str
    checks: list

    @property
    def ok(self):
        return all(verdict for _, _, verdict in self.checks)


def predecessor_count(kappa):
    """Formula in a1 and z: a1 has exactly z predecessors in the translated
    order of the one-dimensional absolute translation kappa."""
    lower = fm.fresh('_w')
    less = translate_formula(kappa, fm.Lt(fm.Var(lower), fm.Var('_top')))
    count = fm.Count('z', lower, less)
    return fm.rename(qe.eliminate(eliminate_counting(count)),
                     {'_top': kappa.a[0]})


def certify_self_interpretation_1d(t, variable='z'):
    """Certificate that t interprets a copy of (N, +)."""
    if t.m != 1:
        raise ValueError('only one-dimensional translations are certified')
    kappa, to_kappa = normalize(t)
    if kappa.m != 1:
        raise NotAModel([('one-dimensional quotient', fm.FALSE, False)])
    count = predecessor_count(kappa)
    r = fm.fresh('_r')
    middle = fm.rename(count, {kappa.a[0]: r, 'z': variable})
    iso = qe.eliminate(fm.exists([r], fm.And(
        fm.rename(to_kappa, {'z1': r}), middle)))
    checks = iso_checks(t, iso, variable)
    cert = IsoCertificate(iso, variable, checks)
    if not cert.ok:
        raise NotAModel(checks)
    return cert


def iso_checks(t, iso, variable):
    y, y2, y3 = t.a[0], fm.fresh('_y'), fm.fresh('_y')
    z, z2, z3 = variable, fm.fresh('_n'), fm.fresh('_n')

    def at(ys, n):
        return fm.rename(iso, {y: ys, variable: n})

    def dom(ys):
        return t.dom_at([ys])

    sentences = [
        ('total', fm.forall([y], fm.Implies(dom(y), fm.exists(
            [z], at(y, z))))),
        ('functional', fm.forall([y, z, z2], fm.Implies(
            fm.And(at(y, z), at(y, z2)), fm.Eq(fm.Var(z), fm.Var(z2))))),
        ('injective modulo eq', fm.forall([y, y2, z], fm.Implies(
            fm.conj([dom(y), dom(y2), at(y, z), at(y2, z)]),
            t.eq_at([y], [y2])))),
        ('surjective', fm.forall([z], fm.exists([y], fm.And(
            dom(y), at(y, z))))),
        ('additive', fm.forall([y, y2, y3, z, z2, z3], fm.Implies(
            fm.conj([dom(y), dom(y2), dom(y3), t.plus_at([y3], [y], [y2]),
                     at(y, z), at(y2, z2), at(y3, z3)]),
            fm.Eq(fm.Var(z3), fm.Add(fm.Var(z), fm.Var(z2)))))),
    ]
    return [(name, s, qe.decide(s)) for name, s in sentences]


# Curated translations -----------------------------------------------------------------

def _one_dim(dom, plus, eq='a1 = b1'):
    return Translation(1, fm.parse(dom), fm.parse(eq), fm.parse(plus))


def identity_translation():
    return _one_dim('true', 'c1 = a1 + b1')


def multiples_translation(k):
    return _one_dim('a1 == 0 mod %d' % k, 'c1 = a1 + b1')


def shifted_translation(shift=5):
    return _one_dim('%d <= a1' % shift, 'c1 + %d = a1 + b1' % shift)


def gap_translation():
    """0 followed by 3, 4, 5, ...: the image of n is n + 2 for n > 0."""
    return _one_dim('a1 = 0 | 3 <= a1',
                    '(a1 = 0 & c1 = b1) | (b1 = 0 & c1 = a1) | '
                    '(3 <= a1 & 3 <= b1 & c1 + 2 = a1 + b1)')


def max_translation():
    return _one_dim('true', '(c1 = a1 & b1 <= a1) | (c1 = b1 & a1 < b1)')


def projection_translation():
    return _one_dim('true', 'c1 = a1')


def parity_translation():
    return _one_dim('true', 'c1 = a1 + b1', eq='a1 == b1 mod 2')


CURATED = {
    'identity': (identity_translation, lambda n: n),
    'evens': (lambda: multiples_translation(2), lambda n: 2 * n),
    'multiples of 3': (lambda: multiples_translation(3), lambda n: 3 * n),
    'shifted': (shifted_translation, lambda n: n + 5),
    'gap': (gap_translation, lambda n: n + 2 if n else 0),
}


# Slope experiment -----------------------------------------------------------------------

@dataclass(frozen=True)
class SlopeReport:
    s: int
    i: int
    bound: int
    heights: np.ndarray
    deviations: np.ndarray
    violations: list

    @property
    def holds(self):
        return not self.violations

    @property
    def min_deviation(self):
        return float(self.deviations.min())

    @property
    def max_deviation(self):
        return float(self.deviations.max())

    def summary(self):
        state = 'all bounds hold' if self.holds else \
            '%d bound violations' % len(self.violations)
        return ('s=%d i=%d bound=%d: %s; h(a) - sqrt(s)*a in [%.6f, %.6f]; '
                'h is squeezed between lines of irrational slope sqrt(%d), '
                'definable unary functions have rational slopes'
                % (self.s, self.i, self.bound, state, self.min_deviation,
                   self.max_deviation, self.s))


def _axis(i, a):
    return (a, 0) if i == 1 else (0, a)


def slope_heights(s, i, bound):
    """h(a) = x + y where (x, y) is the point of rank s times the rank of
    the axis point of a."""
    heights = []
    for a in range(bound + 1):
        x, y = cantor_inverse(i, s * cantor_eval(i, _axis(i, a)))
        heights.append(x + y)
    return heights


def en_experiment(s, i, bound):
    if i not in (1, 2):
        raise ValueError('Cantor orders are numbered 1 and 2')
    if isqrt(s) ** 2 == s:
        raise SquareInput('%d is a perfect square' % s)
    heights = slope_heights(s, i, bound)
    violations = []
    for a, h in enumerate(heights):
        # sqrt(s).a - 2 < h < sqrt(s).(a + 1), squared
        if not (h + 2) ** 2 > s * a * a or not h * h < s * (a + 1) ** 2:
            violations.append(a)
    hs = np.array(heights, dtype=float)
    deviations = hs - np.sqrt(s) * np.arange(bound + 1, dtype=float)
    report = SlopeReport(s, i, bound, hs, deviations, violations)
    _LOGGER.debug(report.summary())
    return report
