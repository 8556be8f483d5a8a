"""
Formulas of Presburger arithmetic over (N,+).

The surface language has numerals, addition, scalar multiples, the relations
=, <, <= and congruences, the boolean connectives, first-order quantifiers
and the counting quantifier ``count y z. phi`` (there are exactly y values
of z satisfying phi).  Every node is an immutable dataclass.
"""
from dataclasses import dataclass
import itertools
import logging
import re

from .common import UNARY_NUMERAL_LIMIT, UNARY_SCALAR_LIMIT
from .errors import (FormulaSyntaxError, NotQuantifierFree, UnboundVariable,
                     UnsupportedCounting)

_LOGGER = logging.getLogger(__name__)

KEYWORDS = ('forall', 'exists', 'count', 'true', 'false', 'mod')


# Terms ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int) \
                or self.value < 0:
            raise ValueError('numerals are natural numbers, got %r'
                             % (self.value,))


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    coef: int
    term: object

    def __post_init__(self):
        if isinstance(self.coef, bool) or not isinstance(self.coef, int) \
                or self.coef < 0:
            raise ValueError('scalar coefficients are natural numbers, got %r'
                             % (self.coef,))


# Formulas ------------------------------------------------------------------

@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


TRUE = Top()
FALSE = Bottom()


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class Lt:
    left: object
    right: object


@dataclass(frozen=True)
class Leq:
    left: object
    right: object


@dataclass(frozen=True)
class CongMod:
    left: object
    right: object
    modulus: int

    def __post_init__(self):
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int) \
                or self.modulus < 1:
            raise ValueError('modulus must be >= 1, got %r' % (self.modulus,))


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Implies:
    left: object
    right: object


@dataclass(frozen=True)
class Iff:
    left: object
    right: object


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


@dataclass(frozen=True)
class Count:
    """count_var is the number of values of bound_var satisfying body."""
    count_var: str
    bound_var: str
    body: object

    def __post_init__(self):
        if self.count_var == self.bound_var:
            raise ValueError('counting and counted variables must differ')


ATOMS = (Eq, Lt, Leq, CongMod)
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Exists, Forall)


# Construction helpers ------------------------------------------------------

_FRESH = itertools.count()


def fresh(prefix='_v'):
    """A variable name never produced before; names starting with '_' are
    reserved for the toolkit."""
    return '%s%d' % (prefix, next(_FRESH))


def term(value):
    if isinstance(value, int):
        return Num(value)
    if isinstance(value, str):
        return Var(value)
    return value


def plus(*terms):
    terms = [term(t) for t in terms]
    if not terms:
        return Num(0)
    result = terms[0]
    for t in terms[1:]:
        result = Add(result, t)
    return result


def times(k, t):
    t = term(t)
    if k == 1:
        return t
    return Mul(k, t)


def conj(formulas):
    formulas = [f for f in formulas if f != TRUE]
    if any(f == FALSE for f in formulas):
        return FALSE
    if not formulas:
        return TRUE
    result = formulas[0]
    for f in formulas[1:]:
        result = And(result, f)
    return result


def disj(formulas):
    formulas = [f for f in formulas if f != FALSE]
    if any(f == TRUE for f in formulas):
        return TRUE
    if not formulas:
        return FALSE
    result = formulas[0]
    for f in formulas[1:]:
        result = Or(result, f)
    return result


def exists(variables, body):
    for v in reversed(list(variables)):
        body = Exists(v, body)
    return body


def forall(variables, body):
    for v in reversed(list(variables)):
        body = Forall(v, body)
    return body


def negate(f):
    if f == TRUE:
        return FALSE
    if f == FALSE:
        return TRUE
    if isinstance(f, Not):
        return f.body
    return Not(f)


def conjuncts(f):
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


# Inspection ----------------------------------------------------------------

def term_vars(t):
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, Num):
        return frozenset()
    if isinstance(t, Add):
        return term_vars(t.left) | term_vars(t.right)
    return term_vars(t.term)


def free_vars(f):
    if isinstance(f, (Top, Bottom)):
        return frozenset()
    if isinstance(f, ATOMS):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    return (free_vars(f.body) - {f.bound_var}) | {f.count_var}


def is_quantifier_free(f):
    if isinstance(f, (Top, Bottom) + ATOMS):
        return True
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    if isinstance(f, BINARY):
        return is_quantifier_free(f.left) and is_quantifier_free(f.right)
    return False


def has_counting(f):
    if isinstance(f, Count):
        return True
    if isinstance(f, Not) or isinstance(f, QUANTIFIERS):
        return has_counting(f.body)
    if isinstance(f, BINARY):
        return has_counting(f.left) or has_counting(f.right)
    return False


def linear_form(t):
    """Coefficient map and constant of a term."""
    if isinstance(t, Num):
        return {}, t.value
    if isinstance(t, Var):
        return {t.name: 1}, 0
    if isinstance(t, Add):
        lc, lk = linear_form(t.left)
        rc, rk = linear_form(t.right)
        coeffs = dict(lc)
        for v, c in rc.items():
            coeffs[v] = coeffs.get(v, 0) + c
        return coeffs, lk + rk
    coeffs, const = linear_form(t.term)
    return {v: t.coef * c for v, c in coeffs.items()}, t.coef * const


# Substitution --------------------------------------------------------------

def substitute_term(t, mapping):
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Num):
        return t
    if isinstance(t, Add):
        return Add(substitute_term(t.left, mapping),
                   substitute_term(t.right, mapping))
    return Mul(t.coef, substitute_term(t.term, mapping))


def substitute(f, mapping):
    """Simultaneous capture-avoiding substitution of terms for free variables."""
    if not mapping:
        return f
    if isinstance(f, (Top, Bottom)):
        return f
    if isinstance(f, CongMod):
        return CongMod(substitute_term(f.left, mapping),
                       substitute_term(f.right, mapping), f.modulus)
    if isinstance(f, ATOMS):
        return type(f)(substitute_term(f.left, mapping),
                       substitute_term(f.right, mapping))
    if isinstance(f, Not):
        return Not(substitute(f.body, mapping))
    if isinstance(f, BINARY):
        return type(f)(substitute(f.left, mapping),
                       substitute(f.right, mapping))
    if isinstance(f, QUANTIFIERS):
        var, body, inner = _bind(f.var, f.body, mapping)
        return type(f)(var, substitute(body, inner))
    count_var = mapping.get(f.count_var, Var(f.count_var))
    if not isinstance(count_var, Var):
        raise ValueError('counting variable %s can only be renamed'
                         % f.count_var)
    var, body, inner = _bind(f.bound_var, f.body, mapping)
    return Count(count_var.name, var, substitute(body, inner))


def _bind(var, body, mapping):
    inner = {k: v for k, v in mapping.items() if k != var}
    captured = set()
    for t in inner.values():
        captured |= term_vars(t)
    if var in captured:
        new = fresh()
        inner[var] = Var(new)
        return new, body, inner
    return var, body, inner


def rename(f, mapping):
    """Rename free variables according to a name -> name map."""
    return substitute(f, {k: Var(v) for k, v in mapping.items() if k != v})


# Rendering -----------------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5}
_OPS = {Iff: '<->', Implies: '->', Or: '|', And: '&'}


def render_term(t, nested=False):
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Mul):
        if isinstance(t.term, (Num, Var)):
            return '%d*%s' % (t.coef, render_term(t.term))
        return '%d*(%s)' % (t.coef, render_term(t.term))
    text = '%s + %s' % (render_term(t.left), render_term(t.right, True))
    return '(%s)' % text if nested else text


def render(f, ctx=0):
    if isinstance(f, Top):
        return 'true'
    if isinstance(f, Bottom):
        return 'false'
    if isinstance(f, Eq):
        return '%s = %s' % (render_term(f.left), render_term(f.right))
    if isinstance(f, Lt):
        return '%s < %s' % (render_term(f.left), render_term(f.right))
    if isinstance(f, Leq):
        return '%s <= %s' % (render_term(f.left), render_term(f.right))
    if isinstance(f, CongMod):
        return '%s == %s mod %d' % (render_term(f.left),
                                    render_term(f.right), f.modulus)
    if isinstance(f, Not):
        text, prec = '!' + render(f.body, 5), 5
    elif isinstance(f, BINARY):
        prec = _PREC[type(f)]
        if isinstance(f, Implies):
            lctx, rctx = prec + 1, prec
        else:
            lctx, rctx = prec, prec + 1
        text = '%s %s %s' % (render(f.left, lctx), _OPS[type(f)],
                             render(f.right, rctx))
    elif isinstance(f, Exists):
        text, prec = 'exists %s. %s' % (f.var, render(f.body)), 0
    elif isinstance(f, Forall):
        text, prec = 'forall %s. %s' % (f.var, render(f.body)), 0
    else:
        text = 'count %s %s. %s' % (f.count_var, f.bound_var, render(f.body))
        prec = 0
    return '(%s)' % text if prec < ctx else text


# Parsing -------------------------------------------------------------------

_TOKEN = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)'
                    r'|(<->|->|<=|==|[=<&|!().+*]))')


def _tokenize(text):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while True:
        while pos < len(text) and text[pos].isspace():
            if text[pos] == '\n':
                line, line_start = line + 1, pos + 1
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise FormulaSyntaxError('unexpected character %r' % text[pos],
                                     line, pos - line_start + 1)
        start = m.start(m.lastindex)
        col = start - line_start + 1
        if m.group(1) is not None:
            tokens.append(('NAT', m.group(1), line, col))
        elif m.group(2) is not None:
            word = m.group(2)
            kind = word if word in KEYWORDS else 'IDENT'
            tokens.append((kind, word, line, col))
        else:
            tokens.append((m.group(3), m.group(3), line, col))
        pos = m.end()
    tokens.append(('EOF', '', line, pos - line_start + 1))
    return tokens


class _Parser(object):

    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def error(self, message):
        _, value, line, col = self.tokens[self.pos]
        found = value or 'end of input'
        raise FormulaSyntaxError('%s, found %r' % (message, found), line, col)

    def expect(self, kind):
        if self.peek() != kind:
            self.error('expected %r' % kind)
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok[1]

    def accept(self, kind):
        if self.peek() == kind:
            self.pos += 1
            return True
        return False

    def formula(self):
        left = self.implication()
        while self.accept('<->'):
            left = Iff(left, self.implication())
        return left

    def implication(self):
        left = self.disjunction()
        if self.accept('->'):
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.accept('|'):
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.accept('&'):
            left = And(left, self.unary())
        return left

    def unary(self):
        kind = self.peek()
        if self.accept('!'):
            return Not(self.unary())
        if kind in ('forall', 'exists'):
            self.pos += 1
            var = self.expect('IDENT')
            self.expect('.')
            body = self.formula()
            return Forall(var, body) if kind == 'forall' else Exists(var, body)
        if kind == 'count':
            self.pos += 1
            count_var = self.expect('IDENT')
            bound_var = self.expect('IDENT')
            if count_var == bound_var:
                self.pos -= 1
                self.error('counting and counted variables must differ')
            self.expect('.')
            return Count(count_var, bound_var, self.formula())
        return self.primary()

    def primary(self):
        if self.accept('true'):
            return TRUE
        if self.accept('false'):
            return FALSE
        if self.peek() == '(':
            start = self.pos
            try:
                return self.atom()
            except FormulaSyntaxError:
                self.pos = start
            self.expect('(')
            inner = self.formula()
            self.expect(')')
            return inner
        return self.atom()

    def atom(self):
        left = self.term()
        kind = self.peek()
        if kind in ('=', '<', '<='):
            self.pos += 1
            right = self.term()
            return {'=': Eq, '<': Lt, '<=': Leq}[kind](left, right)
        if kind == '==':
            self.pos += 1
            right = self.term()
            self.expect('mod')
            if self.peek() != 'NAT':
                self.error('expected a modulus')
            modulus = int(self.tokens[self.pos][1])
            if modulus < 1:
                self.error('modulus must be >= 1')
            self.pos += 1
            return CongMod(left, right, modulus)
        self.error('expected a relation')

    def term(self):
        left = self.product()
        while self.accept('+'):
            left = Add(left, self.product())
        return left

    def product(self):
        if self.peek() == 'NAT':
            value = int(self.expect('NAT'))
            if self.accept('*'):
                return Mul(value, self.factor())
            return Num(value)
        return self.factor()

    def factor(self):
        kind = self.peek()
        if kind == 'IDENT':
            return Var(self.expect('IDENT'))
        if kind == 'NAT':
            return Num(int(self.expect('NAT')))
        if self.accept('('):
            inner = self.term()
            self.expect(')')
            return inner
        self.error('expected a term')


def parse(text):
    parser = _Parser(text)
    result = parser.formula()
    if parser.peek() != 'EOF':
        parser.error('unexpected trailing input')
    return result


# Evaluation ----------------------------------------------------------------

def eval_term(t, env):
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariable('variable %s has no value' % t.name)
    if isinstance(t, Add):
        return eval_term(t.left, env) + eval_term(t.right, env)
    return t.coef * eval_term(t.term, env)


def _eval_atom(f, env):
    left, right = eval_term(f.left, env), eval_term(f.right, env)
    if isinstance(f, Eq):
        return left == right
    if isinstance(f, Lt):
        return left < right
    if isinstance(f, Leq):
        return left <= right
    return (left - right) % f.modulus == 0


def evaluate_qf(f, assignment):
    if not is_quantifier_free(f):
        raise NotQuantifierFree('formula has quantifiers: %s' % render(f))
    return _evaluate(f, dict(assignment), None)


def evaluate_bounded(f, assignment, bound):
    """Truth of f when every quantifier ranges over {0, ..., bound}.

    Test oracle only: it agrees with the semantics over N when the bound is
    large enough for the instance at hand.
    """
    return _evaluate(f, dict(assignment), bound)


def _evaluate(f, env, bound):
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, ATOMS):
        return _eval_atom(f, env)
    if isinstance(f, Not):
        return not _evaluate(f.body, env, bound)
    if isinstance(f, And):
        return _evaluate(f.left, env, bound) and _evaluate(f.right, env, bound)
    if isinstance(f, Or):
        return _evaluate(f.left, env, bound) or _evaluate(f.right, env, bound)
    if isinstance(f, Implies):
        return (not _evaluate(f.left, env, bound)) \
            or _evaluate(f.right, env, bound)
    if isinstance(f, Iff):
        return _evaluate(f.left, env, bound) == _evaluate(f.right, env, bound)
    if bound is None:
        raise NotQuantifierFree('formula has quantifiers: %s' % render(f))
    if isinstance(f, Exists):
        return any(_evaluate(f.body, _extend(env, f.var, v), bound)
                   for v in _candidates(f.var, _positive(f.body, False),
                                        env, bound))
    if isinstance(f, Forall):
        return all(_evaluate(f.body, _extend(env, f.var, v), bound)
                   for v in _candidates(f.var, _positive(f.body, True),
                                        env, bound))
    if f.count_var not in env:
        raise UnboundVariable('variable %s has no value' % f.count_var)
    count = sum(1 for v in _candidates(f.bound_var, _positive(f.body, False),
                                       env, bound)
                if _evaluate(f.body, _extend(env, f.bound_var, v), bound))
    return count == env[f.count_var]


def _extend(env, var, value):
    inner = dict(env)
    inner[var] = value
    return inner


def _positive(f, negated):
    """Equations that must hold whenever f (or its negation) holds."""
    if not negated:
        if isinstance(f, And):
            return _positive(f.left, False) + _positive(f.right, False)
        if isinstance(f, Eq):
            return [f]
        if isinstance(f, Not):
            return _positive(f.body, True)
        return []
    if isinstance(f, Or):
        return _positive(f.left, True) + _positive(f.right, True)
    if isinstance(f, Implies):
        return _positive(f.left, False) + _positive(f.right, True)
    if isinstance(f, Not):
        return _positive(f.body, False)
    return []


def _candidates(var, equations, env, bound):
    for eq in equations:
        lc, lk = linear_form(eq.left)
        rc, rk = linear_form(eq.right)
        coeffs = dict(lc)
        for v, c in rc.items():
            coeffs[v] = coeffs.get(v, 0) - c
        a = coeffs.pop(var, 0)
        if a == 0 or any(v not in env for v, c in coeffs.items() if c):
            continue
        rest = lk - rk + sum(c * env[v] for v, c in coeffs.items())
        if rest % a != 0:
            return []
        value = -rest // a
        return [value] if 0 <= value <= bound else []
    return range(bound + 1)


# Translation to the signature (=, +) -----------------------------------------

def zero_def(w):
    v = fresh()
    return Forall(v, Eq(Add(Var(w), Var(v)), Var(v)))


def one_def(w):
    u, v = fresh(), fresh()
    return And(Not(zero_def(w)),
               Forall(u, Forall(v, Implies(Eq(Var(w), Add(Var(u), Var(v))),
                                           Or(zero_def(u), zero_def(v))))))


def numeral_def(n, w):
    """Definition of the numeral n as a property of the variable w."""
    if n == 0:
        return zero_def(w)
    if n == 1:
        return one_def(w)
    u, o = fresh(), fresh()
    if n <= UNARY_NUMERAL_LIMIT:
        return Exists(o, And(one_def(o), Exists(u, And(
            Eq(Var(w), Add(Var(u), Var(o))), numeral_def(n - 1, u)))))
    half = Exists(u, And(Eq(Var(w), plus(u, u, *([o] * (n % 2)))),
                         numeral_def(n // 2, u)))
    if n % 2 == 0:
        return half
    return Exists(o, And(one_def(o), half))


def _core_scaled(k, name, defs):
    if k <= UNARY_SCALAR_LIMIT:
        return plus(*([name] * k))
    half = fresh()
    defs.append((half, Eq(Var(half), _core_scaled(k // 2, name, defs))))
    return plus(half, half, *([name] * (k % 2)))


def _core_term(t, defs):
    if isinstance(t, Var):
        return t
    if isinstance(t, Num) or (isinstance(t, Mul) and t.coef == 0):
        w = fresh()
        defs.append((w, numeral_def(t.value if isinstance(t, Num) else 0, w)))
        return Var(w)
    if isinstance(t, Add):
        return Add(_core_term(t.left, defs), _core_term(t.right, defs))
    inner = _core_term(t.term, defs)
    if not isinstance(inner, Var):
        w = fresh()
        defs.append((w, Eq(Var(w), inner)))
        inner = Var(w)
    return _core_scaled(t.coef, inner.name, defs)


def _desugar_atom(f):
    defs = []
    if isinstance(f, CongMod) and f.modulus == 1:
        return TRUE
    if isinstance(f, CongMod) and Num(0) in (f.left, f.right):
        other = f.right if f.left == Num(0) else f.left
        q = fresh()
        body = Eq(_core_term(other, defs), _core_scaled(f.modulus, q, defs))
        body = Exists(q, _wrap(defs, body))
        return body
    left = _core_term(f.left, defs)
    right = _core_term(f.right, defs)
    if isinstance(f, Eq):
        body = Eq(left, right)
    elif isinstance(f, Leq):
        u = fresh()
        body = Exists(u, Eq(right, Add(left, Var(u))))
    elif isinstance(f, Lt):
        u = fresh()
        body = Exists(u, And(Eq(right, Add(left, Var(u))), Not(zero_def(u))))
    else:
        q = fresh()
        inner = []
        step = _core_scaled(f.modulus, q, inner)
        body = Exists(q, _wrap(inner, Or(Eq(left, Add(right, step)),
                                         Eq(right, Add(left, step)))))
    return _wrap(defs, body)


def _wrap(defs, body):
    if not defs:
        return body
    names = [name for name, _ in defs]
    # the atom goes first so that its equation pins down the witnesses
    return exists(names, conj([body] + [d for _, d in defs]))


def desugar(f):
    """Equivalent formula over the signature (=, +) alone."""
    if has_counting(f):
        raise UnsupportedCounting('counting quantifiers cannot be desugared')
    return _desugar(f)


def _desugar(f):
    if isinstance(f, (Top, Bottom)):
        return f
    if isinstance(f, Eq) and all(isinstance(t, (Var, Add)) and
                                 _is_core(t) for t in (f.left, f.right)):
        return f
    if isinstance(f, ATOMS):
        return _desugar_atom(f)
    if isinstance(f, Not):
        return Not(_desugar(f.body))
    if isinstance(f, BINARY):
        return type(f)(_desugar(f.left), _desugar(f.right))
    return type(f)(f.var, _desugar(f.body))


def _is_core(t):
    if isinstance(t, Var):
        return True
    if isinstance(t, Add):
        return _is_core(t.left) and _is_core(t.right)
    return False


def is_core(f):
    """True when f only uses =, +, variables, connectives and quantifiers."""
    if isinstance(f, (Top, Bottom)):
        return True
    if isinstance(f, Eq):
        return _is_core(f.left) and _is_core(f.right)
    if isinstance(f, ATOMS):
        return False
    if isinstance(f, Not):
        return is_core(f.body)
    if isinstance(f, BINARY):
        return is_core(f.left) and is_core(f.right)
    if isinstance(f, QUANTIFIERS):
        return is_core(f.body)
    return False
