"""
Command line entry point.

    pra decide "forall x. exists y. x = 2*y | x = 2*y + 1"
    pra dim "y = 2*x" --vars x,y
    pra partition --matrix "1 1"

Exit code 0 on success, 2 on errors; decide exits 1 for false sentences.
"""
import argparse
import json
import logging
import sys

from .errors import PresburgerError
from . import formula as fm
from . import qelim as qe
from . import counting
from . import dimension
from . import interpretations
from . import orders
from . import semilinear

_LOGGER = logging.getLogger(__name__)

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _variables(text):
    names = [v.strip() for v in (text or '').split(',') if v.strip()]
    if not names:
        raise UsageError('--vars is required')
    return names


def _read_formula(args, stdin):
    sources = [s for s in (args.formula, args.file) if s is not None]
    if len(sources) != 1:
        raise UsageError('give exactly one formula, inline, with --file '
                         'or as - for stdin')
    if args.file is not None:
        with open(args.file) as handle:
            return fm.parse(handle.read())
    if args.formula == '-':
        return fm.parse(stdin.read())
    return fm.parse(args.formula)


def _point(text):
    return tuple(int(x) for x in text.split(','))


def _matrix(text):
    rows = [r.split() for r in text.split(';') if r.strip()]
    return [[int(x) for x in r] for r in rows]


def _checks_json(checks):
    return [{'name': name, 'sentence': fm.render(s), 'verdict': verdict}
            for name, s, verdict in checks]


def _order(args):
    names = _variables(args.vars)
    if len(names) % 2:
        raise UsageError('--vars lists the m left and then the m right '
                         'variables')
    m = len(names) // 2
    left, right = names[:m], names[m:]
    domain = semilinear.from_formula(fm.parse(args.domain), left)
    return orders.DefinableOrder(m, domain, fm.parse(args.order),
                                 tuple(left), tuple(right))


# Subcommands ------------------------------------------------------------------

def cmd_decide(args, out, stdin):
    verdict = qe.decide(_read_formula(args, stdin))
    if args.json:
        json.dump({'result': verdict}, out)
        out.write('\n')
    else:
        out.write('%s\n' % ('true' if verdict else 'false'))
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_qe(args, out, stdin):
    result = fm.render(qe.eliminate(_read_formula(args, stdin)))
    if args.json:
        json.dump({'formula': result}, out)
        out.write('\n')
    else:
        out.write(result + '\n')
    return EXIT_OK


def cmd_semilinear(args, out, stdin):
    S = semilinear.from_formula(_read_formula(args, stdin),
                                _variables(args.vars))
    if args.enumerate is not None:
        points = semilinear.enumerate_points(S, args.enumerate)
        json.dump([[str(x) for x in p] for p in points], out)
    else:
        json.dump(semilinear.to_json(S), out)
    out.write('\n')
    return EXIT_OK


def cmd_dim(args, out, stdin):
    S = semilinear.from_formula(_read_formula(args, stdin),
                                _variables(args.vars))
    json.dump({'dim': str(dimension.dim(S).dim)}, out)
    out.write('\n')
    return EXIT_OK


def cmd_bijection(args, out, stdin):
    names = _variables(args.vars)
    S = semilinear.from_formula(_read_formula(args, stdin), names)
    B = dimension.bijection_to_cube(S, names)
    if args.json:
        json.dump({'dim': str(dimension.dim(S).dim),
                   'formula': fm.render(B)}, out)
        out.write('\n')
    else:
        out.write(fm.render(B) + '\n')
    return EXIT_OK


def cmd_count(args, out, stdin):
    S = semilinear.from_formula(_read_formula(args, stdin),
                                _variables(args.vars))
    json.dump(counting.to_json(counting.section_count(S, args.split)), out)
    out.write('\n')
    return EXIT_OK


def cmd_partition(args, out, stdin):
    P = counting.partition_function(_matrix(args.matrix))
    json.dump(counting.to_json(P), out)
    out.write('\n')
    return EXIT_OK


def cmd_rank(args, out, stdin):
    cert = orders.vd_rank(_order(args))
    json.dump({'rank': str(cert.rank), 'classCount': str(cert.class_count),
               'condensations': [fm.render(f) for f in cert.condensations]},
              out)
    out.write('\n')
    return EXIT_OK


def cmd_iso(args, out, stdin):
    json.dump(counting.to_json(orders.order_type_iso(_order(args))), out)
    out.write('\n')
    return EXIT_OK


def cmd_cantor(args, out, stdin):
    if (args.eval is None) == (args.inverse is None):
        raise UsageError('give exactly one of --eval and --inverse')
    if args.eval is not None:
        point = _point(args.eval)
        if len(point) != 2:
            raise UsageError('--eval takes a point x,y')
        out.write('%d\n' % orders.cantor_eval(args.i, point))
    else:
        out.write('%d,%d\n' % orders.cantor_inverse(args.i, args.inverse))
    return EXIT_OK


def cmd_interp(args, out, stdin):
    if args.path == '-':
        data = json.load(stdin)
    else:
        with open(args.path) as handle:
            data = json.load(handle)
    t = interpretations.translation_from_json(data)
    if args.action == 'verify':
        report = interpretations.verify_basics(t)
        json.dump({'ok': report.ok, 'checks': _checks_json(report.checks)},
                  out)
    elif args.action == 'normalize':
        kappa, iso = interpretations.normalize(t)
        json.dump({'translation': interpretations.translation_to_json(kappa),
                   'iso': fm.render(iso)}, out)
    else:
        cert = interpretations.certify_self_interpretation_1d(t)
        json.dump({'iso': fm.render(cert.iso), 'variable': cert.variable,
                   'checks': _checks_json(cert.checks)}, out)
    out.write('\n')
    return EXIT_OK


def cmd_cantor_exp(args, out, stdin):
    report = interpretations.en_experiment(args.s, args.i, args.bound)
    if args.json:
        json.dump({'s': str(report.s), 'i': str(report.i),
                   'bound': str(report.bound), 'holds': report.holds,
                   'minDeviation': repr(report.min_deviation),
                   'maxDeviation': repr(report.max_deviation),
                   'violations': [str(a) for a in report.violations]}, out)
        out.write('\n')
    else:
        out.write(report.summary() + '\n')
    return EXIT_OK if report.holds else EXIT_FALSE


# Parser -----------------------------------------------------------------------

def _add_formula(parser, vars_required=False):
    parser.add_argument('formula', nargs='?',
                        help='formula text, or - to read it from stdin')
    parser.add_argument('--file', help='read the formula from a file')
    parser.add_argument('--vars', required=vars_required,
                        help='comma separated coordinate order')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='pra', description='Presburger arithmetic toolkit: decision, '
        'semilinear sets, counting and interpretations in (N, +).')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true',
                        help='machine readable output')
    common.add_argument('--verbose', action='store_true',
                        help='debug logging on stderr')
    sub = parser.add_subparsers(dest='command')

    p = sub.add_parser('decide', parents=[common],
                       help='decide a sentence')
    _add_formula(p)
    p.set_defaults(func=cmd_decide)
    p = sub.add_parser('qe', parents=[common],
                       help='eliminate quantifiers')
    _add_formula(p)
    p.set_defaults(func=cmd_qe)
    p = sub.add_parser('semilinear', parents=[common],
                       help='disjoint fundamental lattices')
    _add_formula(p, True)
    p.add_argument('--enumerate', type=int, metavar='N',
                   help='list the members in [0, N]^k instead')
    p.set_defaults(func=cmd_semilinear)
    p = sub.add_parser('dim', parents=[common],
                       help='dimension of a definable set')
    _add_formula(p, True)
    p.set_defaults(func=cmd_dim)
    p = sub.add_parser('bijection', parents=[common],
                       help='definable bijection onto N^dim')
    _add_formula(p, True)
    p.set_defaults(func=cmd_bijection)
    p = sub.add_parser('count', parents=[common],
                       help='section cardinality function')
    _add_formula(p, True)
    p.add_argument('--split', type=int, required=True,
                   help='number of counted leading coordinates')
    p.set_defaults(func=cmd_count)
    p = sub.add_parser('partition', parents=[common],
                       help='vector partition function')
    p.add_argument('--matrix', required=True,
                   help='rows of space separated entries, rows split by ;')
    p.set_defaults(func=cmd_partition)
    for name, func in (('rank', cmd_rank), ('iso', cmd_iso)):
        p = sub.add_parser(name, parents=[common],
                           help='VD*-rank certificate' if name == 'rank'
                           else 'isomorphism onto (N, <)')
        p.add_argument('--domain', required=True)
        p.add_argument('--order', required=True)
        p.add_argument('--vars', required=True,
                       help='left variables then right variables')
        p.set_defaults(func=func)
    p = sub.add_parser('cantor', parents=[common],
                       help='Cantor polynomials')
    p.add_argument('--i', type=int, choices=(1, 2), default=1)
    p.add_argument('--eval')
    p.add_argument('--inverse', type=int)
    p.set_defaults(func=cmd_cantor)
    p = sub.add_parser('interp', parents=[common],
                       help='translations of (N, +)')
    p.add_argument('action', choices=('verify', 'certify', 'normalize'))
    p.add_argument('path', help='translation JSON file, or - for stdin')
    p.set_defaults(func=cmd_interp)
    p = sub.add_parser('cantor-exp', parents=[common],
                       help='slope bounds of s.C_i')
    p.add_argument('--s', type=int, required=True)
    p.add_argument('--i', type=int, choices=(1, 2), default=1)
    p.add_argument('--bound', type=int, default=10000)
    p.set_defaults(func=cmd_cantor_exp)
    return parser


def run(argv, out=None, err=None, stdin=None):
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    verbose = getattr(args, 'verbose', False)
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING)
    if args.command is None:
        parser.print_usage(err)
        return EXIT_ERROR
    try:
        return args.func(args, out, stdin)
    except (PresburgerError, UsageError, ValueError, OSError) as exc:
        _LOGGER.debug('command failed', exc_info=True)
        err.write('error: %s\n' % exc)
        return EXIT_ERROR


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
