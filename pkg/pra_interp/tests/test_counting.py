from itertools import product
import unittest

import sympy as sp

from pra_interp import counting as ct
from pra_interp import formula as fm
from pra_interp import qelim as qe
from pra_interp import semilinear as sl
from pra_interp.common import make_rng
from pra_interp.errors import BadSplit, InternalConsistencyError, NotAFunction
from pra_interp.tests.test_semilinear import random_qf


def definable(text, names):
    return sl.from_formula(fm.parse(text), names)


class TestSectionCount(unittest.TestCase):

    def assert_matches_brute_force(self, S, n, box):
        P = ct.section_count(S, n)
        for b in product(range(box + 1), repeat=S.dim - n):
            self.assertEqual(ct.eval_pwpoly(P, b),
                             ct.brute_section_count(S, n, b), b)
        return P

    def test_below(self):
        P = ct.section_count(definable('z < a', ['z', 'a']), 1)
        for a in range(30):
            self.assertEqual(ct.eval_pwpoly(P, (a,)), a)
        self.assertTrue(sl.is_empty(P.infinite))
        self.assertLessEqual(P.degree(), 1)

    def test_halves(self):
        P = ct.section_count(definable('2*z = a', ['z', 'a']), 1)
        for a in range(30):
            self.assertEqual(ct.eval_pwpoly(P, (a,)), 1 - a % 2)
        self.assertEqual(P.degree(), 0)

    def test_infinite_sections(self):
        P = ct.section_count(definable('a <= z | z = 0', ['z', 'a']), 1)
        for a in range(10):
            self.assertIs(ct.eval_pwpoly(P, (a,)), ct.INFINITE)
        P = ct.section_count(definable('a = 0 & 1 <= z | z < a', ['z', 'a']),
                             1)
        self.assertIs(ct.eval_pwpoly(P, (0,)), ct.INFINITE)
        self.assertEqual(ct.eval_pwpoly(P, (4,)), 4)

    def test_brute_force(self):
        curated = [('z < a & z == 0 mod 3', ['z', 'a'], 1, 20),
                   ('z < a & z < b', ['z', 'a', 'b'], 1, 6),
                   ('z + w = a', ['z', 'w', 'a'], 2, 12),
                   ('z + 2*w <= a', ['z', 'w', 'a'], 2, 12),
                   ('a < z & z < b', ['z', 'a', 'b'], 1, 6)]
        for text, names, n, box in curated:
            self.assert_matches_brute_force(definable(text, names), n, box)

    def test_four_variables(self):
        S = definable('z + w <= a & w <= b', ['z', 'w', 'a', 'b'])
        P = self.assert_matches_brute_force(S, 2, 7)
        self.assertEqual(ct.eval_pwpoly(P, (4, 9)), 15)
        self.assertEqual(ct.eval_pwpoly(P, (4, 2)), 12)

    def test_bad_split(self):
        S = definable('z < a', ['z', 'a'])
        for n in (0, 2):
            with self.assertRaises(BadSplit):
                ct.section_count(S, n)


class TestPartitionFunction(unittest.TestCase):

    def test_two_ones(self):
        P = ct.partition_function([[1, 1]])
        self.assertEqual(P.degree_bound, 1)
        for u in range(51):
            self.assertEqual(ct.eval_pwpoly(P, (u,)), u + 1)

    def test_parity(self):
        P = ct.partition_function([[2]])
        self.assertEqual(P.degree_bound, 0)
        for u in range(20):
            self.assertEqual(ct.eval_pwpoly(P, (u,)), int(u % 2 == 0))

    def test_identity(self):
        P = ct.partition_function([[1, 0], [0, 1]])
        for u in product(range(6), repeat=2):
            self.assertEqual(ct.eval_pwpoly(P, u), 1)

    def test_coin_change(self):
        P = ct.partition_function([[1, 2]])
        for u in range(30):
            self.assertEqual(ct.eval_pwpoly(P, (u,)), u // 2 + 1)

    def test_negative_entries(self):
        with self.assertRaises(ValueError):
            ct.partition_function([[1, -1]])

    def test_empty_matrix(self):
        for A in ([], [[]], [[1], []]):
            with self.assertRaises(ValueError):
                ct.partition_function(A)


class TestPiecewise(unittest.TestCase):

    def below(self):
        return ct.section_count(definable('z < a', ['z', 'a']), 1)

    def test_degree_bound(self):
        (b,) = ct.parameter_symbols(1)
        piece = sl.FundamentalLattice((0,), ((1,),))
        with self.assertRaises(InternalConsistencyError):
            ct.PiecewisePolynomial(1, ((piece, sp.Poly(b ** 2, b,
                                                       domain='QQ')),),
                                   sl.SemilinearSet(1, ()), 1)

    def test_restrict(self):
        evens = definable('x == 0 mod 2', ['x'])
        P = ct.pw_restrict(self.below(), evens)
        for a in range(20):
            expected = a if a % 2 == 0 else ct.UNDEFINED
            self.assertEqual(ct.eval_pwpoly(P, (a,)), expected)

    def test_add(self):
        P = self.below()
        Q = ct.section_count(definable('a <= z & z < 2*a | a = 3',
                                       ['z', 'a']), 1)
        R = ct.pw_add(P, Q)
        for a in range(15):
            expected = ct.INFINITE if a == 3 else 2 * a
            self.assertEqual(ct.eval_pwpoly(R, (a,)), expected)

    def test_json(self):
        P = ct.section_count(definable('2*z < a', ['z', 'a']), 1)
        data = ct.to_json(P)
        self.assertEqual(data['paramDim'], 1)
        self.assertTrue(all('lattice' in p and 'poly' in p
                            for p in data['pieces']))
        Q = ct.from_json(data)
        for a in range(20):
            self.assertEqual(ct.eval_pwpoly(Q, (a,)), ct.eval_pwpoly(P, (a,)))
            self.assertEqual(ct.eval_pwpoly(Q, (a,)), (a + 1) // 2)


class TestFunctions(unittest.TestCase):

    def test_linear(self):
        P = ct.function_pieces(fm.parse('y = 2*x'), 'y', ['x'])
        self.assertEqual(ct.slopes(P), [2])
        self.assertEqual(ct.eval_pwpoly(P, (7,)), 14)

    def test_piecewise(self):
        graph = fm.parse('x < 2 & y = 0 | 2 <= x & y = 2*x + 1')
        P = ct.function_pieces(graph, 'y', ['x'])
        self.assertEqual(set(ct.slopes(P)), {2})
        for x in range(12):
            self.assertEqual(ct.eval_pwpoly(P, (x,)),
                             0 if x < 2 else 2 * x + 1)

    def test_not_a_function(self):
        with self.assertRaises(NotAFunction):
            ct.function_pieces(fm.parse('y <= x'), 'y', ['x'])


class TestCountingElimination(unittest.TestCase):

    def check(self, text, expected, xs=range(12)):
        g = ct.eliminate_counting(fm.parse(text))
        self.assertFalse(fm.has_counting(g))
        for x in xs:
            for n in range(14):
                self.assertEqual(qe.holds_formula(g, {'x': x, 'n': n}),
                                 expected(x) == n, (text, x, n))

    def test_below(self):
        self.check('count n z. z < x', lambda x: x)

    def test_even_below(self):
        self.check('count n z. z < x & z == 0 mod 2', lambda x: (x + 1) // 2)

    def test_quantified_body(self):
        self.check('count n z. exists w. z + w = x', lambda x: x + 1)

    def test_unbounded(self):
        self.check('count n z. x < z', lambda x: None)

    def test_closed(self):
        g = ct.eliminate_counting(fm.parse('count n z. z < 3'))
        for n in range(6):
            self.assertEqual(fm.evaluate_qf(g, {'n': n}), n == 3)

    def test_random_bodies(self):
        # truth in z is periodic with period dividing 12 beyond z = 40 for
        # these bodies, so a hit in [80, 100) means an infinite section
        rng = make_rng(5)
        for _ in range(12):
            body = random_qf(rng, ['z', 'x'])
            f = fm.Count('n', 'z', body)
            g = ct.eliminate_counting(f)
            self.assertFalse(fm.has_counting(g))
            for x in range(11):
                hits = [z for z in range(100)
                        if fm.evaluate_qf(body, {'z': z, 'x': x})]
                count = None if any(z >= 80 for z in hits) else len(hits)
                for n in sorted(set(range(12)) | {len(hits)}):
                    self.assertEqual(qe.holds_formula(g, {'x': x, 'n': n}),
                                     n == count, (fm.render(f), x, n))

    def test_finiteness(self):
        f = ct.finiteness_formula(fm.parse('z < x'), ['z'])
        self.assertEqual(fm.free_vars(f), frozenset(['x']))
        self.assertTrue(qe.holds_formula(f, {'x': 5}))
        g = ct.finiteness_formula(fm.parse('x < z'), ['z'])
        self.assertFalse(qe.holds_formula(g, {'x': 5}))


if __name__ == '__main__':
    unittest.main()
