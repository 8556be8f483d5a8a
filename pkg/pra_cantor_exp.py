"""
Slope experiment on the Cantor orders.

    python pra_cantor_exp.py [s] [--plot]

For every non-square s and both Cantor orders, the height h(a) of the
point of rank s times the rank of the axis point of a stays within
sqrt(s).a - 2 < h(a) < sqrt(s).(a + 1).  A line of irrational slope cannot
be followed by a definable unary function, whose slopes are rational.
"""
from __future__ import print_function
from sys import argv
import numpy as np
import matplotlib.pylab as plt

from pra_interp.interpretations import en_experiment

BOUND = 10 ** 4

args = [a for a in argv[1:] if not a.startswith('--')]
factors = [int(a) for a in args] or [2, 3, 5]

if __name__ == '__main__':
    reports = []
    for s in factors:
        for i in (1, 2):
            report = en_experiment(s, i, BOUND)
            reports.append(report)
            print(report.summary())

    if "--plot" in argv:
        plt.figure()
        a = np.arange(BOUND + 1)
        for report in reports:
            if report.i == 1:
                plt.plot(a, report.deviations, label='s=%d' % report.s)
        plt.axhline(-2., color='k', linestyle='--')
        plt.xlabel('a')
        plt.ylabel('h(a) - sqrt(s) a')
        plt.legend()
        plt.show()

    assert all(report.holds for report in reports)
