import random
import unittest

from pra_interp import formula as fm
from pra_interp import qelim as qe
from pra_interp.common import make_rng
from pra_interp.errors import FreeVariablesPresent


def random_atom(rng, names):
    def side():
        terms = [fm.times(rng.randint(1, 3), v) for v in names
                 if rng.random() < 0.5]
        return fm.plus(*(terms + [rng.randint(0, 4)]))
    kind = rng.choice(['lt', 'le', 'eq', 'cong'])
    left, right = side(), side()
    if kind == 'lt':
        return fm.Lt(left, right)
    if kind == 'le':
        return fm.Leq(left, right)
    if kind == 'eq':
        return fm.Eq(left, right)
    return fm.CongMod(left, right, rng.randint(2, 4))


def random_formula(rng, free, bound, depth):
    """Random formula whose quantifiers are guarded by y <= x + 3 for a free
    variable x, so that bounded evaluation is exact."""
    if depth == 0 or rng.random() < 0.3:
        return random_atom(rng, free)
    choice = rng.random()
    if choice < 0.3 and bound:
        var, rest = bound[0], bound[1:]
        guard = fm.Leq(fm.Var(var), fm.plus(rng.choice(free), 3))
        body = random_formula(rng, free + [var], rest, depth - 1)
        if rng.random() < 0.5:
            return fm.Exists(var, fm.And(guard, body))
        return fm.Forall(var, fm.Implies(guard, body))
    if choice < 0.45:
        return fm.Not(random_formula(rng, free, bound, depth - 1))
    op = fm.And if choice < 0.75 else fm.Or
    return op(random_formula(rng, free, bound, depth - 1),
              random_formula(rng, free, bound, depth - 1))


class TestDecide(unittest.TestCase):

    def test_sentences(self):
        cases = [('forall x. exists y. x = 2*y | x = 2*y + 1', True),
                 ('exists x. x + x = 1', False),
                 ('forall x. exists y. y < x', False),
                 ('forall x. x == 0 mod 2 | x == 1 mod 2', True),
                 ('exists x. 3*x + 1 = 2*x + 5', True),
                 ('forall x. forall y. x + y = y + x', True),
                 ('exists x. forall y. y <= x', False),
                 ('forall x. 5 <= x -> exists u. exists v. x = 3*u + 5*v',
                  False),
                 ('forall x. 8 <= x -> exists u. exists v. x = 3*u + 5*v',
                  True)]
        for text, expected in cases:
            self.assertEqual(qe.decide(fm.parse(text)), expected, text)

    def test_free_variables(self):
        with self.assertRaises(FreeVariablesPresent):
            qe.decide(fm.parse('exists y. x = y'))

    def test_valid_and_satisfiable(self):
        self.assertTrue(qe.valid(fm.parse('x < y -> x + 1 <= y')))
        self.assertFalse(qe.valid(fm.parse('x < y')))
        self.assertTrue(qe.satisfiable(fm.parse('x < y & y < x + 2')))
        self.assertFalse(qe.satisfiable(fm.parse('x < y & y < x + 1')))
        self.assertTrue(qe.equivalent(fm.parse('exists y. x = 2*y'),
                                      fm.parse('x == 0 mod 2')))


class TestEliminate(unittest.TestCase):

    def test_parity(self):
        g = qe.eliminate(fm.parse('exists y. x = 2*y + 1'))
        self.assertTrue(fm.is_quantifier_free(g))
        for x in range(30):
            self.assertEqual(fm.evaluate_qf(g, {'x': x}), x % 2 == 1)

    def test_bounded_interval(self):
        g = qe.eliminate(fm.parse('exists y. x < y & y < z & y == 0 mod 3'))
        for x in range(12):
            for z in range(12):
                expected = any(x < y < z for y in range(0, 12, 3))
                self.assertEqual(fm.evaluate_qf(g, {'x': x, 'z': z}),
                                 expected)

    def test_universal(self):
        g = qe.eliminate(fm.parse('forall y. y < x -> 2*y < z'))
        for x in range(10):
            for z in range(10):
                expected = all(2 * y < z for y in range(x))
                self.assertEqual(fm.evaluate_qf(g, {'x': x, 'z': z}),
                                 expected)

    def test_counting_quantifier(self):
        g = qe.eliminate(fm.parse('count n z. z < x'))
        self.assertFalse(fm.has_counting(g))
        for x in range(10):
            for n in range(10):
                self.assertEqual(fm.evaluate_qf(g, {'x': x, 'n': n}), n == x)

    def test_random_formulas(self):
        rng = random.Random(7)
        for _ in range(25):
            f = random_formula(rng, ['x', 'z'], ['y', 'w'], 3)
            g = qe.eliminate(f)
            self.assertTrue(fm.is_quantifier_free(g))
            for x in range(6):
                for z in range(6):
                    env = {'x': x, 'z': z}
                    self.assertEqual(fm.evaluate_qf(g, env),
                                     fm.evaluate_bounded(f, env, 20),
                                     (fm.render(f), env))

    def test_random_formulas_wide(self):
        # 200 seeded formulas with the free variables in [0, 30], each checked
        # on the corners of the square and on twelve seeded points inside it
        rng = make_rng()
        corners = [(0, 0), (0, 30), (30, 0), (30, 30)]
        for _ in range(200):
            f = random_formula(rng, ['x', 'z'], ['y', 'w'], 3)
            g = qe.eliminate(f)
            self.assertTrue(fm.is_quantifier_free(g))
            points = corners + [(rng.randint(0, 30), rng.randint(0, 30))
                                for _ in range(12)]
            for x, z in points:
                env = {'x': x, 'z': z}
                self.assertEqual(fm.evaluate_qf(g, env),
                                 fm.evaluate_bounded(f, env, 40),
                                 (fm.render(f), env))


class TestInternalForm(unittest.TestCase):

    def test_normalisation(self):
        self.assertEqual(qe.mk_le({'x': 0}, 0), qe.TRUE)
        self.assertEqual(qe.mk_eq({'x': 2}, 1), qe.FALSE)
        self.assertEqual(qe.mk_dvd(4, {'x': 2}, 1), qe.FALSE)
        self.assertEqual(qe.mk_dvd(2, {'x': 2}, 0), qe.TRUE)
        # x >= 0 always holds on naturals
        self.assertEqual(qe.mk_le({'x': -1}, 0), qe.TRUE)

    def test_contradiction(self):
        node = qe.mk_and([qe.mk_le({'x': 1}, -2), qe.mk_le({'x': -1}, 3)])
        self.assertEqual(node, qe.FALSE)

    def test_surface_round_trip(self):
        f = fm.parse('2*x + 1 <= y & !(x == y mod 3)')
        node = qe.to_internal(f)
        g = qe.to_surface(node)
        for x in range(8):
            for y in range(8):
                env = {'x': x, 'y': y}
                self.assertEqual(qe.holds(node, env), fm.evaluate_qf(f, env))
                self.assertEqual(fm.evaluate_qf(g, env),
                                 fm.evaluate_qf(f, env))


if __name__ == '__main__':
    unittest.main()
