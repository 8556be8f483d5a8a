"""
Semilinear sets: definable subsets of N^k as finite disjoint unions of
fundamental lattices {c + l_1.p_1 + ... + l_s.p_s : l in N^s} with linearly
independent generators p_i.
"""
from dataclasses import dataclass
from functools import lru_cache
import logging

from .common import as_int, inverse, lcm_all, rank
from .errors import DimensionMismatch, UnboundVariable
from . import formula as fm
from . import qelim as qe
from .polyhedra import lattice_points

_LOGGER = logging.getLogger(__name__)


def _nat_tuple(values, what):
    result = tuple(int(v) for v in values)
    if any(v < 0 for v in result):
        raise ValueError('%s must be non-negative: %r' % (what, result))
    return result


@dataclass(frozen=True)
class Lattice:
    base: tuple
    generators: tuple = ()

    def __post_init__(self):
        base = _nat_tuple(self.base, 'base')
        if not base:
            raise ValueError('lattices live in N^k with k >= 1')
        gens = tuple(_nat_tuple(g, 'generator') for g in self.generators)
        if any(len(g) != len(base) for g in gens):
            raise DimensionMismatch('generator length differs from base')
        object.__setattr__(self, 'base', base)
        object.__setattr__(self, 'generators', gens)

    @property
    def dim(self):
        return len(self.base)

    def is_fundamental(self):
        return rank(self.generators) == len(self.generators) \
            if self.generators else True

    def sort_key(self):
        return (self.base, self.generators)


@dataclass(frozen=True)
class FundamentalLattice(Lattice):

    def __post_init__(self):
        super(FundamentalLattice, self).__post_init__()
        if not self.is_fundamental():
            raise ValueError('generators are linearly dependent: %r'
                             % (self.generators,))

    def coefficients(self, point):
        """Unique coefficient vector of a member, None for non-members."""
        if len(point) != self.dim:
            raise DimensionMismatch('point of length %d in N^%d'
                                    % (len(point), self.dim))
        rows, K, D = solver(self)
        diff = [p - c for p, c in zip(point, self.base)]
        lam = []
        for row in K:
            value = sum(a * diff[k] for a, k in zip(row, rows))
            if value % D or value < 0:
                return None
            lam.append(value // D)
        for i in range(self.dim):
            if sum(l * g[i] for l, g in zip(lam, self.generators)) != diff[i]:
                return None
        return tuple(lam)

    def point(self, coefficients):
        return tuple(c + sum(l * g[i] for l, g in
                             zip(coefficients, self.generators))
                     for i, c in enumerate(self.base))

    @classmethod
    def of(cls, lattice):
        return cls(lattice.base, lattice.generators)


@lru_cache(maxsize=None)
def solver(lattice):
    """(rows, K, D): the coefficients of x are K.(x - c)[rows] / D."""
    gens = lattice.generators
    rows = []
    for i in range(lattice.dim):
        candidate = rows + [i]
        if rank([[g[k] for g in gens] for k in candidate]) == len(candidate):
            rows = candidate
        if len(rows) == len(gens):
            break
    if not gens:
        return [], [], 1
    inv = inverse([[g[k] for g in gens] for k in rows])
    D = lcm_all(x.denominator for row in inv for x in row)
    K = [[as_int(x * D) for x in row] for row in inv]
    return rows, K, D


def coefficient_forms(lattice, variables):
    """Linear forms (coeffs, const) equal to D times each coefficient."""
    rows, K, D = solver(lattice)
    forms = []
    for row in K:
        coeffs = {}
        const = 0
        for a, k in zip(row, rows):
            coeffs[variables[k]] = coeffs.get(variables[k], 0) + a
            const -= a * lattice.base[k]
        forms.append((coeffs, const))
    return forms, D


@dataclass(frozen=True)
class SemilinearSet:
    dim: int
    pieces: tuple = ()

    def __post_init__(self):
        pieces = tuple(sorted((p if isinstance(p, FundamentalLattice)
                               else FundamentalLattice.of(p)
                               for p in self.pieces),
                              key=Lattice.sort_key))
        if any(p.dim != self.dim for p in pieces):
            raise DimensionMismatch('piece outside N^%d' % self.dim)
        object.__setattr__(self, 'pieces', pieces)


# Formula -> lattices ---------------------------------------------------------

def _branches(atom):
    coeffs, const = atom.lin.as_dict(), atom.lin.const
    if atom.kind == 'le':
        return [(atom, True), (qe.negate(atom), False)]
    if atom.kind == 'eq':
        return [(atom, True),
                (qe.mk_le(coeffs, const + 1), False),
                (qe.mk_le({v: -c for v, c in coeffs.items()}, 1 - const),
                 False)]
    holds = atom.kind == 'dvd'
    residues = [(qe.mk_dvd(atom.modulus, coeffs, const - r), not holds)
                for r in range(1, atom.modulus)]
    return [(qe.mk_dvd(atom.modulus, coeffs, const), holds)] + residues


def _assign(node, atom, value):
    def replace(a):
        if a.lin != atom.lin or a.modulus != atom.modulus:
            return a
        if a.kind == atom.kind:
            return qe.TRUE if value else qe.FALSE
        if {a.kind, atom.kind} == {'dvd', 'ndvd'}:
            return qe.FALSE if value else qe.TRUE
        return a
    return qe.map_atoms(node, replace)


def disjoint_cubes(node):
    """Pairwise disjoint conjunctions of le/eq/dvd atoms covering node."""
    if node == qe.TRUE:
        return [[]]
    if node == qe.FALSE:
        return []
    atom = next(qe.atoms(node))
    cubes = []
    for literal, value in _branches(atom):
        if literal == qe.FALSE:
            continue
        rest = _assign(node, atom, value)
        prefix = [] if literal == qe.TRUE else [literal]
        for cube in disjoint_cubes(rest):
            cubes.append(prefix + cube)
    return cubes


def _cube_points(cube, variables, salt):
    index = {v: i for i, v in enumerate(variables)}
    k = len(variables)
    divisibilities = [a for a in cube if a.kind == 'dvd']
    size = k + len(divisibilities)
    equalities, inequalities = [], []

    def row(lin):
        r = [0] * size
        for v, c in lin.coeffs:
            r[index[v]] = c
        return r

    for atom in cube:
        if atom.kind == 'le':
            inequalities.append(([-c for c in row(atom.lin)], atom.lin.const))
        elif atom.kind == 'eq':
            equalities.append((row(atom.lin), -atom.lin.const))
    for j, atom in enumerate(divisibilities):
        # a.x + c = m.q with a fresh natural quotient q
        r = row(atom.lin)
        r[k + j] = -atom.modulus
        equalities.append((r, -atom.lin.const))
    pieces = []
    for base, gens in lattice_points(equalities, inequalities, size, salt):
        pieces.append(FundamentalLattice(base[:k], tuple(g[:k] for g in gens)))
    return pieces


def from_formula(f, variables):
    variables = list(variables)
    missing = fm.free_vars(f) - set(variables)
    if missing:
        raise UnboundVariable('variables %s missing from the coordinate list'
                              % ', '.join(sorted(missing)))
    node = qe.to_internal(f)
    cubes = disjoint_cubes(node)
    _LOGGER.debug('%d disjoint cubes over %s', len(cubes), variables)
    pieces = []
    for salt, cube in enumerate(cubes):
        pieces.extend(_cube_points(cube, variables, salt))
    return SemilinearSet(len(variables), tuple(pieces))


# Lattices -> formula ---------------------------------------------------------

def piece_node(lattice, variables):
    """Internal quantifier-free node for membership in a fundamental lattice."""
    if not lattice.generators:
        return qe.mk_and([qe.mk_eq({v: 1}, -c)
                          for v, c in zip(variables, lattice.base)])
    rows, _, D = solver(lattice)
    forms, D = coefficient_forms(lattice, variables)
    parts = []
    for coeffs, const in forms:
        parts.append(qe.mk_le({v: -c for v, c in coeffs.items()}, -const))
        if D > 1:
            parts.append(qe.mk_dvd(D, coeffs, const))
    for i, v in enumerate(variables):
        if i in rows:
            continue
        # D.x_i = D.c_i + sum_j p_j[i] * form_j
        coeffs = {v: D}
        const = -D * lattice.base[i]
        for g, (fc, fk) in zip(lattice.generators, forms):
            for w, a in fc.items():
                coeffs[w] = coeffs.get(w, 0) - g[i] * a
            const -= g[i] * fk
        parts.append(qe.mk_eq(coeffs, const))
    return qe.mk_and(parts)


def lattice_formula(lattice, variables):
    """Quantifier-free membership formula of an arbitrary lattice."""
    if lattice.is_fundamental():
        return qe.to_surface(piece_node(FundamentalLattice.of(lattice),
                                        variables))
    lam = [fm.fresh('_l') for _ in lattice.generators]
    parts = []
    for i, v in enumerate(variables):
        terms = [fm.times(g[i], l) for g, l in zip(lattice.generators, lam)
                 if g[i]]
        parts.append(fm.Eq(fm.Var(v), fm.plus(lattice.base[i], *terms)))
    return qe.eliminate(fm.exists(lam, fm.conj(parts)))


def to_formula(S, variables):
    variables = list(variables)
    if len(variables) != S.dim:
        raise DimensionMismatch('%d variables for a subset of N^%d'
                                % (len(variables), S.dim))
    return qe.to_surface(to_node(S, variables))


def to_node(S, variables):
    return qe.mk_or([piece_node(p, variables) for p in S.pieces])


def disjointify(lattices):
    """Disjoint fundamental lattices with the same union as the input.

    One pass: every lattice is replaced by its difference with the union of
    the earlier ones, computed through elimination and from_formula.
    """
    lattices = list(lattices)
    if not lattices:
        return []
    k = lattices[0].dim
    if any(l.dim != k for l in lattices):
        raise DimensionMismatch('lattices of different ambient dimension')
    variables = ['_x%d' % i for i in range(k)]
    result = []
    earlier = []
    for lattice in lattices:
        current = qe.to_internal(lattice_formula(lattice, variables))
        if lattice.is_fundamental() and not any(
                qe.satisfiable(qe.to_surface(qe.mk_and([current, e])))
                for e in earlier):
            result.append(FundamentalLattice.of(lattice))
        else:
            rest = qe.mk_and([current] + [qe.negate(e) for e in earlier])
            result.extend(from_formula(qe.to_surface(rest), variables).pieces)
        earlier.append(current)
    return sorted(result, key=Lattice.sort_key)


# Queries ---------------------------------------------------------------------

def member(S, point):
    if len(point) != S.dim:
        raise DimensionMismatch('point of length %d in N^%d'
                                % (len(point), S.dim))
    return any(p.coefficients(point) is not None for p in S.pieces)


def is_empty(S):
    return not S.pieces


def is_finite(S):
    return all(not p.generators for p in S.pieces)


def _enumerate_piece(lattice, box):
    found = []

    def walk(j, point):
        if any(x > box for x in point):
            return
        if j == len(lattice.generators):
            found.append(tuple(point))
            return
        gen = lattice.generators[j]
        current = list(point)
        while all(x <= box for x in current):
            walk(j + 1, current)
            current = [a + b for a, b in zip(current, gen)]

    walk(0, list(lattice.base))
    return found


def enumerate_points(S, box):
    points = set()
    for piece in S.pieces:
        points.update(_enumerate_piece(piece, box))
    return sorted(points)


def size(S):
    """Number of members of a finite set."""
    assert is_finite(S)
    return len(S.pieces)


def intersects(S, T):
    variables = ['_x%d' % i for i in range(S.dim)]
    return qe.satisfiable(fm.And(to_formula(S, variables),
                                 to_formula(T, variables)))


# JSON ------------------------------------------------------------------------

def lattice_to_json(lattice):
    return {'base': [str(x) for x in lattice.base],
            'generators': [[str(x) for x in g] for g in lattice.generators]}


def lattice_from_json(data, cls=FundamentalLattice):
    return cls(tuple(int(x) for x in data['base']),
               tuple(tuple(int(x) for x in g) for g in data['generators']))


def to_json(S):
    return {'dim': S.dim, 'lattices': [lattice_to_json(p) for p in S.pieces]}


def from_json(data):
    return SemilinearSet(int(data['dim']),
                         tuple(lattice_from_json(p) for p in data['lattices']))
