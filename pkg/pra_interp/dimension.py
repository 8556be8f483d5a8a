"""
Dimension of definable sets and definable bijections with N^l.
"""
from dataclasses import dataclass
import logging

import numpy as np

from .errors import FiniteSet
from . import formula as fm
from . import qelim as qe
from .semilinear import (FundamentalLattice, coefficient_forms,
                         enumerate_points, piece_node, to_formula)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class DimensionResult:
    dim: int
    witness: FundamentalLattice = None


def dim(S):
    best = None
    for piece in S.pieces:
        if best is None or len(piece.generators) > len(best.generators):
            best = piece
    if best is None:
        return DimensionResult(0, None)
    return DimensionResult(len(best.generators), best)


@dataclass(frozen=True)
class _Case:
    """Affine image y = A.l + b of the coefficients l of a piece, valid on
    the points whose coefficients satisfy the conditions."""
    piece: FundamentalLattice
    conditions: tuple
    image: tuple


def _affine(coeffs, const):
    return (tuple(coeffs), const)


def _is_constant(form):
    return not any(form[0])


def _add_condition(case, kind, form):
    if _is_constant(form):
        value = form[1]
        holds = value == 0 if kind == 'eq0' else value >= 1
        return case if holds else None
    return _Case(case.piece, case.conditions + ((kind, form),), case.image)


def _hotel(case, s, l):
    """Apply v -> v + e_s when v_{s+1..l-1} vanish (0-based), else v."""
    results = []
    shifted = case
    for i in range(s + 1, l):
        shifted = shifted and _add_condition(shifted, 'eq0', case.image[i])
    if shifted is not None:
        image = list(shifted.image)
        coeffs, const = image[s]
        image[s] = (coeffs, const + 1)
        results.append(_Case(shifted.piece, shifted.conditions, tuple(image)))
    for i in range(s + 1, l):
        branch = case
        for j in range(s + 1, i):
            branch = branch and _add_condition(branch, 'eq0', case.image[j])
        branch = branch and _add_condition(branch, 'ge1', case.image[i])
        if branch is not None:
            results.append(branch)
    return results


def _identity_case(piece, l):
    s = len(piece.generators)
    image = []
    for i in range(l):
        coeffs = [int(i == j) for j in range(s)]
        image.append(_affine(coeffs, 0))
    return _Case(piece, (), tuple(image))


def bijection_cases(S):
    """Piecewise affine bijection from S onto N^l, l = dim(S)."""
    result = dim(S)
    l = result.dim
    if l == 0:
        raise FiniteSet('finite sets have no bijection with a cube')
    tops = [p for p in S.pieces if len(p.generators) == l]
    lows = [p for p in S.pieces if len(p.generators) < l]
    # the low pieces are absorbed one by one into the first top piece
    absorbed = [_identity_case(tops[0], l)]
    for low in lows:
        s = len(low.generators)
        absorbed = [c for case in absorbed for c in _hotel(case, s, l)]
        absorbed.append(_identity_case(low, l))
    cases = []
    count = len(tops)
    blocks = [absorbed] + [[_identity_case(t, l)] for t in tops[1:]]
    for i, block in enumerate(blocks):
        for case in block:
            image = list(case.image)
            coeffs, const = image[0]
            image[0] = (tuple(count * c for c in coeffs), count * const + i)
            cases.append(_Case(case.piece, case.conditions, tuple(image)))
    _LOGGER.debug('bijection of a %d-dimensional set in %d cases', l,
                  len(cases))
    return l, cases


def _scaled_form(form, forms, D):
    """D times an affine form in the coefficients, as a form in x."""
    coeffs, const = form
    result = {}
    total = D * const
    for a, (fc, fk) in zip(coeffs, forms):
        for v, c in fc.items():
            result[v] = result.get(v, 0) + a * c
        total += a * fk
    return result, total


def case_node(case, variables, cube_variables):
    forms, D = coefficient_forms(case.piece, variables)
    parts = [piece_node(case.piece, variables)]
    for kind, form in case.conditions:
        coeffs, const = _scaled_form(form, forms, D)
        if kind == 'eq0':
            parts.append(qe.mk_eq(coeffs, const))
        else:
            # form >= 1, that is D - D.form <= 0
            parts.append(qe.mk_le({v: -c for v, c in coeffs.items()},
                                  D - const))
    for y, form in zip(cube_variables, case.image):
        coeffs, const = _scaled_form(form, forms, D)
        coeffs = {v: -c for v, c in coeffs.items()}
        coeffs[y] = coeffs.get(y, 0) + D
        parts.append(qe.mk_eq(coeffs, -const))
    return qe.mk_and(parts)


def default_variables(prefix, count):
    return ['%s%d' % (prefix, i + 1) for i in range(count)]


def bijection_to_cube(S, variables=None, cube_variables=None):
    """Formula B(x, y) whose graph is a bijection from S onto N^dim(S)."""
    l, cases = bijection_cases(S)
    variables = list(variables or default_variables('x', S.dim))
    cube_variables = list(cube_variables or default_variables('y', l))
    node = qe.mk_or([case_node(c, variables, cube_variables) for c in cases])
    return qe.to_surface(node)


def apply_bijection(S, point):
    """Image of a member of S under the bijection of bijection_to_cube."""
    _, cases = bijection_cases(S)
    for case in cases:
        lam = case.piece.coefficients(point)
        if lam is None:
            continue
        if all(_value(form, lam) == 0 if kind == 'eq0'
               else _value(form, lam) >= 1 for kind, form in case.conditions):
            return tuple(_value(form, lam) for form in case.image)
    return None


def _value(form, lam):
    coeffs, const = form
    return const + sum(a * x for a, x in zip(coeffs, lam))


def verify_bijection(S, B, variables=None, cube_variables=None):
    """Decide that B is the graph of a bijection from S onto a cube."""
    l = dim(S).dim
    xs = list(variables or default_variables('x', S.dim))
    ys = list(cube_variables or default_variables('y', l))
    xs2 = [fm.fresh() for _ in xs]
    ys2 = [fm.fresh() for _ in ys]
    member = to_formula(S, xs)
    B_y2 = fm.rename(B, dict(zip(ys, ys2)))
    B_x2 = fm.rename(B, dict(zip(xs, xs2)))

    def equal(us, vs):
        return fm.conj([fm.Eq(fm.Var(u), fm.Var(v)) for u, v in zip(us, vs)])

    sentences = [
        ('total', fm.forall(xs, fm.Implies(member, fm.exists(ys, B)))),
        ('functional', fm.forall(xs + ys + ys2, fm.Implies(
            fm.And(B, B_y2), equal(ys, ys2)))),
        ('injective', fm.forall(xs + xs2 + ys, fm.Implies(
            fm.And(B, B_x2), equal(xs, xs2)))),
        ('surjective', fm.forall(ys, fm.exists(xs, B))),
        ('inside', fm.forall(xs + ys, fm.Implies(B, member))),
    ]
    return [(name, sentence, qe.decide(sentence))
            for name, sentence in sentences]


def growth_exponent(S, sizes=(20, 40, 80)):
    """Slope of log |members in [0, n]^k| against log n."""
    counts = [max(len(enumerate_points(S, n)), 1) for n in sizes]
    slope, _ = np.polyfit(np.log(np.array(sizes, dtype=float)),
                          np.log(np.array(counts, dtype=float)), 1)
    return float(slope)


def growth_ratios(S, sizes=(20, 40, 80)):
    """|members in [0, n]^k| / n^dim for each size."""
    d = dim(S).dim
    counts = np.array([len(enumerate_points(S, n)) for n in sizes],
                      dtype=float)
    return counts / np.power(np.array(sizes, dtype=float), d)
