import io
import json
import os
import tempfile
import unittest

from pra_interp import cli
from pra_interp import counting as ct


def run(*argv, stdin=''):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err, io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


class TestDecide(unittest.TestCase):

    def test_true(self):
        code, out, _ = run('decide', 'forall x. exists y. x = 2*y | x = 2*y + 1')
        self.assertEqual((code, out), (0, 'true\n'))

    def test_false(self):
        code, out, _ = run('decide', 'exists x. x + x = 1')
        self.assertEqual((code, out), (1, 'false\n'))

    def test_json_and_stdin(self):
        code, out, _ = run('decide', '-', '--json', stdin='forall x. x = x')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {'result': True})

    def test_syntax_error(self):
        code, out, err = run('decide', 'x = = y')
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertTrue(err.startswith('error:'))

    def test_free_variables(self):
        code, _, err = run('decide', 'x < 3')
        self.assertEqual(code, 2)
        self.assertIn('free variables', err)

    def test_usage(self):
        self.assertEqual(run()[0], 2)
        self.assertEqual(run('dim', 'x < 3')[0], 2)


class TestCommands(unittest.TestCase):

    def test_qe(self):
        code, out, _ = run('qe', '--json', 'exists y. x = 2*y')
        self.assertEqual(code, 0)
        self.assertIn('formula', json.loads(out))

    def test_dim(self):
        code, out, _ = run('dim', 'y = 2*x', '--vars', 'x,y')
        self.assertEqual((code, json.loads(out)), (0, {'dim': '1'}))

    def test_enumerate(self):
        code, out, _ = run('semilinear', 'y = 2*x', '--vars', 'x,y',
                           '--enumerate', '4')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), [['0', '0'], ['1', '2'], ['2', '4']])

    def test_partition(self):
        code, out, _ = run('partition', '--matrix', '1 1')
        self.assertEqual(code, 0)
        P = ct.from_json(json.loads(out))
        self.assertEqual(ct.eval_pwpoly(P, (7,)), 8)

    def test_partition_empty_matrix(self):
        for text in ('', ' ; '):
            code, out, err = run('partition', '--matrix', text)
            self.assertEqual((code, out), (2, ''))
            self.assertIn('non-empty matrix', err)
        code, _, err = run('partition', '--matrix', '1 1; 2')
        self.assertEqual(code, 2)
        self.assertIn('differ in length', err)

    def test_bijection_json(self):
        code, out, _ = run('bijection', '--json', 'x = 0 | 3 <= x',
                           '--vars', 'x')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['dim'], '1')

    def test_count(self):
        code, out, _ = run('count', 'z < a', '--vars', 'z,a', '--split', '1')
        self.assertEqual(code, 0)
        P = ct.from_json(json.loads(out))
        self.assertEqual(ct.eval_pwpoly(P, (9,)), 9)
        self.assertEqual(run('count', 'z < a', '--vars', 'z,a',
                             '--split', '2')[0], 2)

    def test_rank(self):
        code, out, _ = run('rank', '--domain', 'true', '--order', 'a1 < b1',
                           '--vars', 'a1,b1')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['rank'], '1')

    def test_cantor(self):
        self.assertEqual(run('cantor', '--eval', '3,4'), (0, '32\n', ''))
        self.assertEqual(run('cantor', '--inverse', '32'), (0, '3,4\n', ''))
        self.assertEqual(run('cantor', '--i', '2', '--eval', '3,4')[1], '31\n')
        self.assertEqual(run('cantor')[0], 2)

    def test_cantor_experiment(self):
        code, out, _ = run('cantor-exp', '--s', '2', '--bound', '200')
        self.assertEqual(code, 0)
        self.assertIn('all bounds hold', out)
        code, _, err = run('cantor-exp', '--s', '4')
        self.assertEqual(code, 2)
        self.assertIn('perfect square', err)


class TestInterp(unittest.TestCase):

    def setUp(self):
        handle, self.path = tempfile.mkstemp(suffix='.json')
        with os.fdopen(handle, 'w') as f:
            json.dump({'m': 1, 'dom': 'true', 'eq': 'a1 = b1',
                       'plus': 'c1 = a1 + b1'}, f)

    def tearDown(self):
        os.remove(self.path)

    def test_verify(self):
        code, out, _ = run('interp', 'verify', self.path)
        self.assertEqual(code, 0)
        result = json.loads(out)
        self.assertTrue(result['ok'])
        self.assertTrue(all(c['verdict'] for c in result['checks']))

    def test_missing_file(self):
        code, _, err = run('interp', 'verify', self.path + '.missing')
        self.assertEqual(code, 2)
        self.assertTrue(err.startswith('error:'))


if __name__ == '__main__':
    unittest.main()
