from itertools import product
import unittest

from pra_interp import formula as fm
from pra_interp.common import make_rng
from pra_interp.errors import (FormulaSyntaxError, NotQuantifierFree,
                               UnboundVariable, UnsupportedCounting)

NAMES = ['x', 'y', 'z', 'w']


def random_term(rng, names, depth, numerals=True):
    if depth == 0 or rng.random() < 0.4:
        if numerals and rng.random() < 0.3:
            return fm.Num(rng.randint(0, 20))
        return fm.Var(rng.choice(names))
    if rng.random() < 0.4:
        return fm.Mul(rng.randint(1, 3),
                      random_term(rng, names, depth - 1, numerals))
    return fm.Add(random_term(rng, names, depth - 1, numerals),
                  random_term(rng, names, depth - 1, numerals))


def random_relation(rng, names, numerals=True):
    left = random_term(rng, names, 2, numerals)
    right = random_term(rng, names, 2, numerals)
    kind = rng.choice([fm.Eq, fm.Lt, fm.Leq, fm.CongMod])
    if kind is fm.CongMod:
        return fm.CongMod(left, right, rng.randint(1, 5))
    return kind(left, right)


def random_ast(rng, depth):
    """Random formula using every node type, counting included."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.1:
            return rng.choice([fm.TRUE, fm.FALSE])
        return random_relation(rng, NAMES)
    choice = rng.random()
    if choice < 0.15:
        return fm.Not(random_ast(rng, depth - 1))
    if choice < 0.6:
        op = rng.choice([fm.And, fm.Or, fm.Implies, fm.Iff])
        return op(random_ast(rng, depth - 1), random_ast(rng, depth - 1))
    if choice < 0.9:
        op = rng.choice([fm.Exists, fm.Forall])
        return op(rng.choice(NAMES), random_ast(rng, depth - 1))
    count_var, bound_var = rng.sample(NAMES, 2)
    return fm.Count(count_var, bound_var, random_ast(rng, depth - 1))


def random_qf_formula(rng, names, depth):
    if depth == 0 or rng.random() < 0.3:
        return random_relation(rng, names, numerals=False)
    choice = rng.random()
    if choice < 0.2:
        return fm.Not(random_qf_formula(rng, names, depth - 1))
    op = fm.And if choice < 0.6 else fm.Or
    return op(random_qf_formula(rng, names, depth - 1),
              random_qf_formula(rng, names, depth - 1))


class TestParseRender(unittest.TestCase):

    def test_round_trip(self):
        for text in ['x + 1 = y',
                     '2*x <= y + 3',
                     'x == y mod 3',
                     '!x < y',
                     'x = 0 & y = 1 | z = 2',
                     'x = y -> y = x',
                     'x = y <-> y = x',
                     'forall x. exists y. x = 2*y | x = 2*y + 1',
                     'count y z. z < x']:
            self.assertEqual(fm.render(fm.parse(text)), text)

    def test_generated_round_trip(self):
        rng = make_rng(1)
        for _ in range(300):
            f = random_ast(rng, 4)
            self.assertEqual(fm.parse(fm.render(f)), f, fm.render(f))

    def test_parenthesised_formula(self):
        f = fm.parse('(x = 1 | x = 2) & y = 0')
        self.assertIsInstance(f, fm.And)
        self.assertIsInstance(f.left, fm.Or)
        self.assertEqual(fm.render(f), '(x = 1 | x = 2) & y = 0')

    def test_parenthesised_term(self):
        f = fm.parse('3*(x + 1) = y')
        self.assertEqual(fm.linear_form(f.left), ({'x': 3}, 3))

    def test_quantifier_scope(self):
        f = fm.parse('exists y. x = y + 1')
        self.assertEqual(fm.free_vars(f), frozenset(['x']))
        g = fm.parse('count n z. z < x')
        self.assertEqual(fm.free_vars(g), frozenset(['n', 'x']))
        self.assertTrue(fm.has_counting(g))
        self.assertFalse(fm.is_quantifier_free(f))

    def test_syntax_errors(self):
        with self.assertRaises(FormulaSyntaxError) as ctx:
            fm.parse('x = y &\n  z')
        self.assertEqual(ctx.exception.line, 2)
        with self.assertRaises(FormulaSyntaxError):
            fm.parse('x == y mod 0')
        with self.assertRaises(FormulaSyntaxError):
            fm.parse('x = y $ 1')
        with self.assertRaises(FormulaSyntaxError):
            fm.parse('count z z. z < 1')

    def test_bad_terms(self):
        with self.assertRaises(ValueError):
            fm.Num(-1)
        with self.assertRaises(ValueError):
            fm.Mul(-2, fm.Var('x'))


class TestEvaluation(unittest.TestCase):

    def test_quantifier_free(self):
        f = fm.parse('x + 2 = y & y == 1 mod 3')
        self.assertTrue(fm.evaluate_qf(f, {'x': 2, 'y': 4}))
        self.assertFalse(fm.evaluate_qf(f, {'x': 1, 'y': 3}))

    def test_errors(self):
        with self.assertRaises(NotQuantifierFree):
            fm.evaluate_qf(fm.parse('exists y. x = y'), {'x': 1})
        with self.assertRaises(UnboundVariable):
            fm.evaluate_qf(fm.parse('x = y'), {'x': 1})

    def test_bounded(self):
        f = fm.parse('forall x. exists y. x = 2*y | x = 2*y + 1')
        self.assertTrue(fm.evaluate_bounded(f, {}, 20))
        g = fm.parse('count n z. z < x & z == 0 mod 2')
        for x in range(12):
            self.assertTrue(fm.evaluate_bounded(g, {'x': x, 'n': (x + 1) // 2},
                                                20))
            self.assertFalse(fm.evaluate_bounded(g, {'x': x, 'n': x + 1}, 20))


class TestSubstitution(unittest.TestCase):

    def test_capture_avoiding(self):
        f = fm.parse('exists y. x = y + 1')
        g = fm.substitute(f, {'x': fm.Var('y')})
        self.assertEqual(fm.free_vars(g), frozenset(['y']))
        self.assertTrue(fm.evaluate_bounded(g, {'y': 3}, 10))
        self.assertFalse(fm.evaluate_bounded(g, {'y': 0}, 10))

    def test_rename_is_simultaneous(self):
        f = fm.parse('x < y')
        g = fm.rename(f, {'x': 'y', 'y': 'x'})
        self.assertEqual(fm.render(g), 'y < x')


class TestDesugar(unittest.TestCase):

    def check(self, text, names, values, bound=10):
        f = fm.parse(text)
        core = fm.desugar(f)
        self.assertTrue(fm.is_core(core))
        self.assertEqual(fm.free_vars(core), fm.free_vars(f))
        for a in values:
            for b in values:
                env = dict(zip(names, (a, b)))
                self.assertEqual(fm.evaluate_bounded(core, env, bound),
                                 fm.evaluate_qf(f, env), (text, env))

    def test_order(self):
        self.check('x < y', 'xy', range(5))
        self.check('x <= y', 'xy', range(5))

    def test_numerals_and_scalars(self):
        self.check('x + 2 = y', 'xy', range(5))
        self.check('2*x = y', 'xy', range(5))

    def test_congruences(self):
        self.check('x == y mod 3', 'xy', range(6))
        self.check('x == 0 mod 2', 'xy', range(5))

    def test_generated_formulas(self):
        rng = make_rng(4)
        for _ in range(8):
            f = random_qf_formula(rng, ['x', 'y'], 2)
            core = fm.desugar(f)
            self.assertTrue(fm.is_core(core))
            for a, b in product(range(21), repeat=2):
                env = {'x': a, 'y': b}
                self.assertEqual(fm.evaluate_bounded(core, env, 200),
                                 fm.evaluate_qf(f, env), (fm.render(f), env))

    def test_small_numerals(self):
        for c in range(3):
            core = fm.desugar(fm.parse('x + %d = y' % c))
            for a, b in product(range(0, 21, 4), range(21)):
                env = {'x': a, 'y': b}
                self.assertEqual(fm.evaluate_bounded(core, env, 24),
                                 b == a + c, (c, env))

    def test_large_numeral(self):
        core = fm.desugar(fm.parse('x = 17'))
        self.assertTrue(fm.is_core(core))
        self.assertTrue(fm.evaluate_bounded(core, {'x': 17}, 18))
        self.assertFalse(fm.evaluate_bounded(core, {'x': 16}, 18))

    def test_counting_rejected(self):
        with self.assertRaises(UnsupportedCounting):
            fm.desugar(fm.parse('count n z. z < x'))


if __name__ == '__main__':
    unittest.main()
