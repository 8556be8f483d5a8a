"""
Exact decomposition of the integer points of a rational polyhedron
{x in N^n : E x = e, G x >= g} into disjoint sets

    base + N.gen_1 + ... + N.gen_s,   gen_1 ... gen_s linearly independent.

The polyhedron is homogenised into a pointed cone in dimension n+1, the cone
is triangulated by pulling its extreme rays, the triangulation is made
half-open with a generic interior point so that its cells are disjoint, and
the integer points of the fundamental parallelepiped of every cell are
enumerated.  Points on the slice t = 1 of the homogenised cone are exactly
the integer points of the polyhedron.
"""
from fractions import Fraction
from itertools import combinations, product
import logging

from .common import (GENERIC_RETRIES, as_int, dot, inverse, make_rng,
                     nullspace, primitive, rank, solve)
from .errors import InternalConsistencyError

_LOGGER = logging.getLogger(__name__)


class Cone(object):
    """Pointed cone {v : A v = 0, B v >= 0} described by its extreme rays."""

    def __init__(self, equations, inequalities, size):
        self.equations = equations
        self.inequalities = inequalities
        self.size = size
        self.rays = self._extreme_rays()
        self.dim = rank(self.rays) if self.rays else 0
        self._memo = {}

    def _extreme_rays(self):
        span = len(nullspace(self.equations, self.size))
        if span == 0:
            return []
        found = []
        for subset in combinations(self.inequalities, span - 1):
            basis = nullspace(self.equations + list(subset), self.size)
            if len(basis) != 1:
                continue
            for sign in (1, -1):
                ray = primitive([sign * x for x in basis[0]])
                if all(dot(row, ray) >= 0 for row in self.inequalities) \
                        and ray not in found:
                    found.append(ray)
        found.sort()
        return found

    def facets(self, face):
        target = rank([self.rays[i] for i in face]) - 1
        seen = []
        for row in self.inequalities:
            sub = frozenset(i for i in face if dot(row, self.rays[i]) == 0)
            if not sub or sub == face or sub in seen:
                continue
            if rank([self.rays[i] for i in sub]) == target:
                seen.append(sub)
        return seen

    def triangulate(self, face=None):
        """Pulling triangulation as a list of sorted ray index tuples."""
        if face is None:
            face = frozenset(range(len(self.rays)))
        if face in self._memo:
            return self._memo[face]
        rays = [self.rays[i] for i in face]
        if len(face) == rank(rays):
            result = [tuple(sorted(face))]
        else:
            apex = min(face)
            result = []
            for facet in self.facets(face):
                if apex in facet:
                    continue
                for cell in self.triangulate(facet):
                    result.append(tuple(sorted((apex,) + cell)))
        self._memo[face] = result
        return result


def _generic_point(rays, cells, rng):
    for _ in range(GENERIC_RETRIES):
        weights = [rng.randint(1, 997) for _ in rays]
        point = [sum(w * r[i] for w, r in zip(weights, rays))
                 for i in range(len(rays[0]))]
        signs = []
        for cell in cells:
            columns = [[rays[j][i] for j in cell] for i in range(len(point))]
            beta = solve(columns, point)
            if beta is None or any(b == 0 for b in beta):
                break
            signs.append([b < 0 for b in beta])
        else:
            return signs
    raise InternalConsistencyError('no generic interior point found')


def _independent_rows(rays, first):
    """Coordinates giving an invertible square block of the ray matrix."""
    chosen = []
    order = [first] + [i for i in range(len(rays[0])) if i != first]
    for i in order:
        candidate = chosen + [i]
        rows = [[r[k] for r in rays] for k in candidate]
        if rank(rows) == len(candidate):
            chosen = candidate
        if len(chosen) == len(rays):
            break
    return chosen


def parallelepiped_points(rays, open_flags, t_index):
    """Integer points of the half-open parallelepiped spanned by rays with
    last homogenising coordinate in {0, 1}."""
    rows = _independent_rows(rays, t_index)
    if t_index not in rows:
        return []
    block = [[r[k] for r in rays] for k in rows]
    inv = inverse(block)
    ranges = []
    for k in rows:
        low = sum(min(0, r[k]) for r in rays)
        high = sum(max(0, r[k]) for r in rays)
        if k == t_index:
            low, high = max(low, 0), min(high, 1)
        ranges.append(range(low, high + 1))
    points = []
    size = len(rays[0])
    for values in product(*ranges):
        mu = [sum(Fraction(a) * v for a, v in zip(row, values)) for row in inv]
        ok = True
        for m, is_open in zip(mu, open_flags):
            if is_open and not 0 < m <= 1:
                ok = False
                break
            if not is_open and not 0 <= m < 1:
                ok = False
                break
        if not ok:
            continue
        point = [sum(m * r[i] for m, r in zip(mu, rays)) for i in range(size)]
        ints = [as_int(x) for x in point]
        if any(x is None for x in ints):
            continue
        points.append(ints)
    return points


def lattice_points(equalities, inequalities, nvars, salt=0):
    """Disjoint (base, generators) cover of the integer points of
    {x in N^n : a.x = b for (a, b) in equalities,
                 a.x >= b for (a, b) in inequalities}."""
    size = nvars + 1
    t = nvars
    eq_rows = [list(a) + [-b] for a, b in equalities]
    ineq_rows = [list(a) + [-b] for a, b in inequalities]
    ineq_rows += [[int(i == k) for i in range(size)] for k in range(size)]
    cone = Cone(eq_rows, ineq_rows, size)
    if not cone.rays or all(r[t] == 0 for r in cone.rays):
        return []
    cells = cone.triangulate()
    _LOGGER.debug('cone with %d rays in dimension %d, %d cells',
                  len(cone.rays), cone.dim, len(cells))
    flags = _generic_point(cone.rays, cells, make_rng(salt))
    result = []
    for cell, open_flags in zip(cells, flags):
        rays = [cone.rays[j] for j in cell]
        if all(r[t] == 0 for r in rays):
            continue
        gens = [tuple(r[:t]) for r in rays if r[t] == 0]
        for p in parallelepiped_points(rays, open_flags, t):
            if p[t] == 1:
                result.append((tuple(p[:t]), gens))
            elif p[t] == 0:
                for r in rays:
                    if r[t] == 1:
                        base = tuple(a + b for a, b in zip(p[:t], r[:t]))
                        result.append((base, gens))
    return result
