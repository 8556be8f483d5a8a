"""
Acceptance run of the Presburger toolkit on curated inputs.

    python pra_check.py [--quick]

Prints one line per check and exits non-zero when any of them fails.
--quick skips the interpretation certificates, which are the slowest part.
"""
from __future__ import print_function
from sys import argv, exit
import logging

from pra_interp import formula as fm
from pra_interp import qelim as qe
from pra_interp import counting as ct
from pra_interp import dimension as dm
from pra_interp import interpretations as it
from pra_interp import orders as od
from pra_interp import semilinear as sl

logging.basicConfig(level=logging.DEBUG if '--verbose' in argv
                    else logging.WARNING)

results = []


def check(name, condition):
    results.append((name, bool(condition)))
    print('%-48s %s' % (name, 'ok' if condition else 'FAILED'))


def definable(text, names):
    return sl.from_formula(fm.parse(text), names)


def run_decision():
    check('parity of every natural', qe.decide(
        fm.parse('forall x. exists y. x = 2*y | x = 2*y + 1')))
    check('no x with x + x = 1',
          not qe.decide(fm.parse('exists x. x + x = 1')))
    check('3 and 5 cover everything from 8', qe.decide(fm.parse(
        'forall x. 8 <= x -> exists u. exists v. x = 3*u + 5*v')))
    check('3 and 5 miss 7', not qe.decide(fm.parse(
        'forall x. 5 <= x -> exists u. exists v. x = 3*u + 5*v')))


def run_sets():
    S = definable('x = 0 | 3 <= x', ['x'])
    check('dim of {0} u [3, oo) is 1', dm.dim(S).dim == 1)
    check('bijection of {0} u [3, oo) onto N', all(
        v for _, _, v in dm.verify_bijection(S, dm.bijection_to_cube(S))))
    check('dim of the graph of 2x is 1',
          dm.dim(definable('y = 2*x', ['x', 'y'])).dim == 1)
    check('dim of a finite box is 0',
          dm.dim(definable('x < 3 & y < 3', ['x', 'y'])).dim == 0)


def run_counting():
    P = ct.partition_function([[1, 1]])
    check('partition function of (1 1) is u + 1',
          all(ct.eval_pwpoly(P, (u,)) == u + 1 for u in range(51)))
    P = ct.partition_function([[2]])
    check('partition function of (2) is parity',
          all(ct.eval_pwpoly(P, (u,)) == 1 - u % 2 for u in range(20)))
    P = ct.section_count(definable('z < a', ['z', 'a']), 1)
    check('sections of z < a have a points',
          all(ct.eval_pwpoly(P, (a,)) == a for a in range(30)))


def run_orders():
    check('rank of (N, <) is 1', od.vd_rank(od.standard_order()).rank == 1)
    check('rank of lex on N^2 is 2', od.vd_rank(od.lex_order(2)).rank == 2)
    for i in (1, 2):
        check('rank of the Cantor order C%d is 1' % i,
              od.vd_rank(od.cantor_order(i)).rank == 1)
    P = od.order_type_iso(od.cantor_order(1))
    check('isomorphism of C1 is the Cantor polynomial', all(
        ct.eval_pwpoly(P, (x, y)) == od.cantor_eval(1, (x, y))
        for x in range(7) for y in range(7)))


def run_interpretations():
    for name, (factory, expected) in sorted(it.CURATED.items()):
        cert = it.certify_self_interpretation_1d(factory())
        check('certificate for %s' % name, cert.ok and all(
            fm.evaluate_qf(cert.iso, {'a1': expected(n), 'z': n})
            for n in range(101)))


def run_slopes():
    for s in (2, 3, 5):
        for i in (1, 2):
            report = it.en_experiment(s, i, 10 ** 4)
            check('slope bounds for %d.C%d' % (s, i), report.holds)


if __name__ == '__main__':
    run_decision()
    run_sets()
    run_counting()
    run_orders()
    if '--quick' not in argv:
        run_interpretations()
    run_slopes()

    failed = [name for name, passed in results if not passed]
    print('%d checks, %d failed' % (len(results), len(failed)))
    exit(1 if failed else 0)
