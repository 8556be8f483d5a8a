import unittest

from pra_interp import dimension as dm
from pra_interp import formula as fm
from pra_interp import semilinear as sl
from pra_interp.errors import FiniteSet


def definable(text, names):
    return sl.from_formula(fm.parse(text), names)


class TestDim(unittest.TestCase):

    def test_curated(self):
        cases = [('y = 2*x', 'xy', 1),
                 ('x < 3 & y < 3', 'xy', 0),
                 ('true', 'xy', 2),
                 ('x == 0 mod 2 | y = 0', 'xy', 2),
                 ('x = y | x = 0', 'xy', 1),
                 ('x = 0 | 3 <= x', 'x', 1),
                 ('x + y = 5', 'xy', 0),
                 ('x = y & y = z', 'xyz', 1),
                 ('x < y & y < z', 'xyz', 3),
                 ('x = 2*y & z < 4', 'xyz', 1),
                 ('x == 0 mod 2 | x == 0 mod 3', 'x', 1),
                 ('x == y mod 2', 'xy', 2),
                 ('x + y <= 4 | x = y', 'xy', 1),
                 ('2*x = 3*y', 'xy', 1),
                 ('x < 0 | y < 0', 'xy', 0),
                 ('x = 5 & y = 7', 'xy', 0),
                 ('x + y = z', 'xyz', 2),
                 ('x <= y & y <= x + 2', 'xy', 1),
                 ('z = 0', 'xyz', 2),
                 ('x < 3 | y < 3 | z < 3', 'xyz', 2)]
        for text, names, expected in cases:
            result = dm.dim(definable(text, list(names)))
            self.assertEqual(result.dim, expected, text)
            if expected:
                self.assertEqual(len(result.witness.generators), expected)

    def test_empty(self):
        self.assertEqual(dm.dim(definable('x < 0', ['x'])).dim, 0)


class TestBijection(unittest.TestCase):

    def assert_bijective(self, S, box, limit):
        images = set()
        for point in sl.enumerate_points(S, box):
            image = dm.apply_bijection(S, point)
            self.assertIsNotNone(image)
            self.assertNotIn(image, images)
            images.add(image)
        l = dm.dim(S).dim
        for y in range(limit):
            self.assertIn((y,) + (0,) * (l - 1), images)

    def test_line(self):
        S = definable('y = 2*x', ['x', 'y'])
        B = dm.bijection_to_cube(S)
        self.assertEqual(fm.free_vars(B), frozenset(['x1', 'x2', 'y1']))
        for name, _, verdict in dm.verify_bijection(S, B):
            self.assertTrue(verdict, name)
        for x in range(8):
            self.assertTrue(fm.evaluate_qf(B, {'x1': x, 'x2': 2 * x,
                                               'y1': x}))

    def test_absorbed_point(self):
        S = definable('x = 0 | 3 <= x', ['x'])
        B = dm.bijection_to_cube(S)
        for name, _, verdict in dm.verify_bijection(S, B):
            self.assertTrue(verdict, name)
        self.assert_bijective(S, 40, 30)

    def test_union_of_multiples(self):
        S = definable('x == 0 mod 2 | x == 0 mod 3', ['x'])
        B = dm.bijection_to_cube(S)
        for name, _, verdict in dm.verify_bijection(S, B):
            self.assertTrue(verdict, name)
        self.assert_bijective(S, 60, 10)

    def test_two_lines(self):
        S = definable('x = 0 | y = 0', ['x', 'y'])
        B = dm.bijection_to_cube(S, ['x', 'y'], ['n'])
        for name, _, verdict in dm.verify_bijection(S, B, ['x', 'y'], ['n']):
            self.assertTrue(verdict, name)
        self.assert_bijective(S, 20, 30)

    def test_plane_with_line(self):
        S = definable('x <= y | y = 0', ['x', 'y'])
        self.assertEqual(dm.dim(S).dim, 2)
        self.assert_bijective(S, 12, 8)

    def test_finite_set(self):
        with self.assertRaises(FiniteSet):
            dm.bijection_to_cube(definable('x < 4', ['x']))


class TestGrowth(unittest.TestCase):

    def test_exponent(self):
        slope = dm.growth_exponent(definable('x <= y', ['x', 'y']))
        self.assertTrue(1.7 < slope < 2.2, slope)
        slope = dm.growth_exponent(definable('y = 2*x', ['x', 'y']))
        self.assertTrue(0.8 < slope < 1.2, slope)

    def test_ratios(self):
        ratios = dm.growth_ratios(definable('x <= y', ['x', 'y']))
        self.assertTrue(all(0.3 < r < 1.0 for r in ratios), ratios)


if __name__ == '__main__':
    unittest.main()
