"""
Quantifier elimination and decision procedure for (N,+).

Formulas are brought into an internal negation normal form over linear
atoms with signed integer coefficients

    le   sum(c*x) + k <= 0
    eq   sum(c*x) + k  = 0
    dvd  m | sum(c*x) + k
    ndvd not m | sum(c*x) + k

and existential quantifiers are removed innermost first with Cooper's
method, run over the integers with the guard x >= 0.  Every atom built
outside of the elimination step itself is normalised (gcd reduction,
residue reduction, constant folding), and the facts that all remaining
variables are natural numbers are used to fold trivially true or false
atoms.
"""
from dataclasses import dataclass
import logging

from .common import CUBE_LIMIT, ceil_div, gcd_all, lcm_all
from .errors import FreeVariablesPresent
from . import formula as fm

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Linear:
    coeffs: tuple
    const: int

    def coef(self, var):
        for v, c in self.coeffs:
            if v == var:
                return c
        return 0

    def as_dict(self):
        return dict(self.coeffs)

    def variables(self):
        return frozenset(v for v, _ in self.coeffs)


def linear(coeffs, const=0):
    return Linear(tuple(sorted((v, c) for v, c in coeffs.items() if c)),
                  const)


@dataclass(frozen=True)
class Atom:
    kind: str
    lin: Linear
    modulus: int = 0


@dataclass(frozen=True)
class Conj:
    items: tuple


@dataclass(frozen=True)
class Disj:
    items: tuple


TRUE = Conj(())
FALSE = Disj(())


# Normalising constructors ----------------------------------------------------

def mk_le(coeffs, const):
    coeffs = {v: c for v, c in coeffs.items() if c}
    if not coeffs:
        return TRUE if const <= 0 else FALSE
    g = gcd_all(coeffs.values())
    coeffs = {v: c // g for v, c in coeffs.items()}
    const = ceil_div(const, g)
    if all(c <= 0 for c in coeffs.values()) and const <= 0:
        return TRUE
    if all(c >= 0 for c in coeffs.values()) and const > 0:
        return FALSE
    return Atom('le', linear(coeffs, const))


def mk_eq(coeffs, const):
    coeffs = {v: c for v, c in coeffs.items() if c}
    if not coeffs:
        return TRUE if const == 0 else FALSE
    g = gcd_all(coeffs.values())
    if const % g:
        return FALSE
    coeffs = {v: c // g for v, c in coeffs.items()}
    const //= g
    if coeffs[min(coeffs)] < 0:
        coeffs = {v: -c for v, c in coeffs.items()}
        const = -const
    if all(c > 0 for c in coeffs.values()) and const > 0:
        return FALSE
    if all(c < 0 for c in coeffs.values()) and const < 0:
        return FALSE
    return Atom('eq', linear(coeffs, const))


def _mk_divisibility(kind, modulus, coeffs, const):
    holds = kind == 'dvd'
    coeffs = {v: c % modulus for v, c in coeffs.items()}
    coeffs = {v: c for v, c in coeffs.items() if c}
    const %= modulus
    if not coeffs:
        return TRUE if (const == 0) == holds else FALSE
    g = gcd_all(list(coeffs.values()) + [modulus])
    if const % g:
        return FALSE if holds else TRUE
    modulus //= g
    if modulus == 1:
        return TRUE if holds else FALSE
    coeffs = {v: c // g for v, c in coeffs.items()}
    return Atom(kind, linear(coeffs, (const // g) % modulus), modulus)


def mk_dvd(modulus, coeffs, const):
    return _mk_divisibility('dvd', modulus, coeffs, const)


def mk_ndvd(modulus, coeffs, const):
    return _mk_divisibility('ndvd', modulus, coeffs, const)


def mk_atom(kind, coeffs, const, modulus=0):
    if kind == 'le':
        return mk_le(coeffs, const)
    if kind == 'eq':
        return mk_eq(coeffs, const)
    return _mk_divisibility(kind, modulus, coeffs, const)


def _is_true(node):
    return isinstance(node, Conj) and not node.items


def _is_false(node):
    return isinstance(node, Disj) and not node.items


def mk_and(nodes):
    flat = []
    for node in nodes:
        if isinstance(node, Conj):
            flat.extend(node.items)
        elif _is_false(node):
            return FALSE
        else:
            flat.append(node)
    atoms_le, atoms_eq, others = {}, {}, []
    for node in flat:
        if isinstance(node, Atom) and node.kind == 'le':
            key = node.lin.coeffs
            atoms_le[key] = max(atoms_le.get(key, node.lin.const),
                                node.lin.const)
        elif isinstance(node, Atom) and node.kind == 'eq':
            key = node.lin.coeffs
            if key in atoms_eq and atoms_eq[key] != node.lin.const:
                return FALSE
            atoms_eq[key] = node.lin.const
        elif node not in others:
            others.append(node)
    for key, const in list(atoms_le.items()):
        neg = tuple((v, -c) for v, c in key)
        if neg in atoms_le and key in atoms_le:
            other = atoms_le[neg]
            # c.x <= -const and c.x >= other
            if other > -const:
                return FALSE
            if other == -const:
                del atoms_le[key]
                del atoms_le[neg]
                merged = mk_eq(dict(key), const)
                if _is_false(merged):
                    return FALSE
                if isinstance(merged, Atom):
                    mkey = merged.lin.coeffs
                    if mkey in atoms_eq and atoms_eq[mkey] != merged.lin.const:
                        return FALSE
                    atoms_eq[mkey] = merged.lin.const
    for key, const in list(atoms_eq.items()):
        neg = tuple((v, -c) for v, c in key)
        if key in atoms_le:
            # c.x = -const
            if atoms_le[key] - const > 0:
                return FALSE
            del atoms_le[key]
        if neg in atoms_le:
            if atoms_le[neg] + const > 0:
                return FALSE
            del atoms_le[neg]
    items = [Atom('eq', Linear(k, c)) for k, c in sorted(atoms_eq.items())]
    items += [Atom('le', Linear(k, c)) for k, c in sorted(atoms_le.items())]
    items += others
    if len(items) == 1:
        return items[0]
    return Conj(tuple(items))


def mk_or(nodes):
    flat = []
    for node in nodes:
        if isinstance(node, Disj):
            flat.extend(node.items)
        elif _is_true(node):
            return TRUE
        else:
            flat.append(node)
    atoms_le, others = {}, []
    for node in flat:
        if isinstance(node, Atom) and node.kind == 'le':
            key = node.lin.coeffs
            atoms_le[key] = min(atoms_le.get(key, node.lin.const),
                                node.lin.const)
        elif node not in others:
            others.append(node)
    items = [Atom('le', Linear(k, c)) for k, c in sorted(atoms_le.items())]
    items += others
    if len(items) == 1:
        return items[0]
    return Disj(tuple(items))


def negate(node):
    if isinstance(node, Conj):
        return mk_or([negate(n) for n in node.items])
    if isinstance(node, Disj):
        return mk_and([negate(n) for n in node.items])
    coeffs, const = node.lin.as_dict(), node.lin.const
    if node.kind == 'le':
        return mk_le({v: -c for v, c in coeffs.items()}, 1 - const)
    if node.kind == 'eq':
        return mk_or([mk_le(coeffs, const + 1),
                      mk_le({v: -c for v, c in coeffs.items()}, 1 - const)])
    if node.kind == 'dvd':
        return mk_ndvd(node.modulus, coeffs, const)
    return mk_dvd(node.modulus, coeffs, const)


# Traversals ------------------------------------------------------------------

def atoms(node):
    if isinstance(node, Atom):
        yield node
    else:
        for item in node.items:
            for atom in atoms(item):
                yield atom


def node_vars(node):
    result = set()
    for atom in atoms(node):
        result |= atom.lin.variables()
    return frozenset(result)


def mentions(node, var):
    return any(atom.lin.coef(var) for atom in atoms(node))


def map_atoms(node, func):
    """Rebuild node with normalising constructors after applying func."""
    if isinstance(node, Atom):
        return func(node)
    if isinstance(node, Conj):
        return mk_and([map_atoms(n, func) for n in node.items])
    return mk_or([map_atoms(n, func) for n in node.items])


def substitute_linear(node, var, coeffs, const, scale=1):
    """Replace scale*var by the linear expression (coeffs, const)."""
    def replace(atom):
        a = atom.lin.coef(var)
        if not a:
            return atom
        assert a % scale == 0
        factor = a // scale
        new = atom.lin.as_dict()
        del new[var]
        for v, c in coeffs.items():
            new[v] = new.get(v, 0) + factor * c
        return mk_atom(atom.kind, new, atom.lin.const + factor * const,
                       atom.modulus)
    return map_atoms(node, replace)


def holds(node, env):
    if isinstance(node, Conj):
        return all(holds(n, env) for n in node.items)
    if isinstance(node, Disj):
        return any(holds(n, env) for n in node.items)
    value = node.lin.const + sum(c * env[v] for v, c in node.lin.coeffs)
    if node.kind == 'le':
        return value <= 0
    if node.kind == 'eq':
        return value == 0
    if node.kind == 'dvd':
        return value % node.modulus == 0
    return value % node.modulus != 0


def dnf(node, limit=None):
    """Cubes (lists of atoms) of node, or None when more than limit."""
    if isinstance(node, Atom):
        return [[node]]
    if isinstance(node, Disj):
        cubes = []
        for item in node.items:
            sub = dnf(item, limit)
            if sub is None:
                return None
            cubes.extend(sub)
            if limit is not None and len(cubes) > limit:
                return None
        return cubes
    cubes = [[]]
    for item in node.items:
        sub = dnf(item, limit)
        if sub is None:
            return None
        cubes = [c + s for c in cubes for s in sub]
        if limit is not None and len(cubes) > limit:
            return None
    return cubes


# Elimination -----------------------------------------------------------------

def exists(var, node):
    """Internal node equivalent to 'exists var in N. node'."""
    if isinstance(node, Disj):
        return mk_or([exists(var, n) for n in node.items])
    items = node.items if isinstance(node, Conj) else (node,)
    free = [n for n in items if not mentions(n, var)]
    bound = [n for n in items if mentions(n, var)]
    if not bound:
        return node
    eqs = [n for n in bound
           if isinstance(n, Atom) and n.kind == 'eq' and n.lin.coef(var)]
    if eqs:
        eq = min(eqs, key=lambda n: abs(n.lin.coef(var)))
        return mk_and(free + [_solve_equation(var, eq, bound)])
    if any(isinstance(n, Disj) for n in bound):
        cubes = dnf(Conj(tuple(bound)), CUBE_LIMIT)
        if cubes is not None and len(cubes) > 1:
            return mk_and(free + [mk_or([exists(var, mk_and(c))
                                         for c in cubes])])
    return mk_and(free + [_cooper(var, Conj(tuple(bound)))])


def _solve_equation(var, eq, bound):
    # c*var + t = 0 determines var = -sign(c)*t/|c|, natural and integral
    c = eq.lin.coef(var)
    t = eq.lin.as_dict()
    del t[var]
    k = eq.lin.const
    sign, size = (1 if c > 0 else -1), abs(c)
    guard = [mk_dvd(size, t, k),
             mk_le({v: sign * a for v, a in t.items()}, sign * k)]
    rest = [n for n in bound if n is not eq]

    def replace(atom):
        a = atom.lin.coef(var)
        if not a:
            return atom
        new = {v: size * b for v, b in atom.lin.as_dict().items() if v != var}
        for v, b in t.items():
            new[v] = new.get(v, 0) - sign * a * b
        const = size * atom.lin.const - sign * a * k
        return mk_atom(atom.kind, new, const, atom.modulus * size)
    return mk_and(guard + [map_atoms(n, replace) for n in rest])


def _scale_raw(node, var, delta):
    if isinstance(node, Conj):
        return Conj(tuple(_scale_raw(n, var, delta) for n in node.items))
    if isinstance(node, Disj):
        return Disj(tuple(_scale_raw(n, var, delta) for n in node.items))
    a = node.lin.coef(var)
    if not a:
        return node
    factor = delta // abs(a)
    coeffs = {v: factor * c for v, c in node.lin.coeffs}
    coeffs[var] = 1 if a > 0 else -1
    return Atom(node.kind, linear(coeffs, factor * node.lin.const),
                node.modulus * factor)


def _cooper(var, node):
    delta = lcm_all(abs(a.lin.coef(var)) for a in atoms(node)
                    if a.lin.coef(var))
    body = _scale_raw(node, var, delta)
    parts = [Atom('le', linear({var: -1}, 0))]
    if delta > 1:
        parts.append(Atom('dvd', linear({var: 1}, 0), delta))
    psi = Conj(tuple(parts) + (body,))
    lower, upper = [], []
    moduli = []
    for atom in atoms(psi):
        a = atom.lin.coef(var)
        if not a:
            continue
        rest = atom.lin.as_dict()
        del rest[var]
        k = atom.lin.const
        if atom.kind == 'le':
            if a < 0:
                # var >= rest + k
                lower.append((rest, k - 1))
            else:
                # var <= -(rest + k)
                upper.append(({v: -c for v, c in rest.items()}, 1 - k))
        elif atom.kind == 'eq':
            if a > 0:
                value = ({v: -c for v, c in rest.items()}, -k)
            else:
                value = (rest, k)
            lower.append((value[0], value[1] - 1))
            upper.append((value[0], value[1] + 1))
        else:
            moduli.append(atom.modulus)
    period = lcm_all(moduli)
    _LOGGER.debug('cooper on %s: %d lower, %d upper bounds, period %d',
                  var, len(lower), len(upper), period)
    disjuncts = []
    if len(upper) + 1 < len(lower):
        infinity = _at_infinity(psi, var)
        for j in range(1, period + 1):
            disjuncts.append(substitute_linear(infinity, var, {}, -j))
            for coeffs, const in upper:
                disjuncts.append(substitute_linear(psi, var, coeffs,
                                                   const - j))
    else:
        for j in range(1, period + 1):
            for coeffs, const in lower:
                disjuncts.append(substitute_linear(psi, var, coeffs,
                                                   const + j))
    return mk_or(disjuncts)


def _at_infinity(node, var):
    if isinstance(node, Conj):
        return Conj(tuple(_at_infinity(n, var) for n in node.items))
    if isinstance(node, Disj):
        return Disj(tuple(_at_infinity(n, var) for n in node.items))
    a = node.lin.coef(var)
    if not a or node.kind in ('dvd', 'ndvd'):
        return node
    if node.kind == 'eq':
        return FALSE
    return TRUE if a < 0 else FALSE


# Surface conversion ----------------------------------------------------------

def _difference(left, right):
    lc, lk = fm.linear_form(left)
    rc, rk = fm.linear_form(right)
    coeffs = dict(lc)
    for v, c in rc.items():
        coeffs[v] = coeffs.get(v, 0) - c
    return coeffs, lk - rk


def to_internal(f):
    """Quantifier-free internal node equivalent to f."""
    if isinstance(f, fm.Top):
        return TRUE
    if isinstance(f, fm.Bottom):
        return FALSE
    if isinstance(f, fm.Eq):
        return mk_eq(*_difference(f.left, f.right))
    if isinstance(f, fm.Lt):
        coeffs, const = _difference(f.left, f.right)
        return mk_le(coeffs, const + 1)
    if isinstance(f, fm.Leq):
        return mk_le(*_difference(f.left, f.right))
    if isinstance(f, fm.CongMod):
        coeffs, const = _difference(f.left, f.right)
        return mk_dvd(f.modulus, coeffs, const)
    if isinstance(f, fm.Not):
        return negate(to_internal(f.body))
    if isinstance(f, fm.And):
        return mk_and([to_internal(f.left), to_internal(f.right)])
    if isinstance(f, fm.Or):
        return mk_or([to_internal(f.left), to_internal(f.right)])
    if isinstance(f, fm.Implies):
        return mk_or([negate(to_internal(f.left)), to_internal(f.right)])
    if isinstance(f, fm.Iff):
        left, right = to_internal(f.left), to_internal(f.right)
        return mk_or([mk_and([left, right]),
                      mk_and([negate(left), negate(right)])])
    if isinstance(f, fm.Exists):
        return exists(f.var, to_internal(f.body))
    if isinstance(f, fm.Forall):
        return negate(exists(f.var, negate(to_internal(f.body))))
    from .counting import eliminate_counting
    return to_internal(eliminate_counting(f))


def _side(coeffs, const):
    terms = [fm.times(c, v) for v, c in sorted(coeffs.items())]
    if const or not terms:
        terms.append(fm.Num(const))
    return fm.plus(*terms)


def atom_to_surface(atom):
    pos = {v: c for v, c in atom.lin.coeffs if c > 0}
    neg = {v: -c for v, c in atom.lin.coeffs if c < 0}
    k = atom.lin.const
    if atom.kind == 'le':
        # pos + k <= neg  is  pos + k < neg + 1
        left, right = _side(pos, max(k, 0)), _side(neg, max(-k, 0))
        return fm.Leq(left, right)
    left, right = _side(pos, max(k, 0)), _side(neg, max(-k, 0))
    if atom.kind == 'eq':
        return fm.Eq(left, right)
    cong = fm.CongMod(left, right, atom.modulus)
    return cong if atom.kind == 'dvd' else fm.Not(cong)


def to_surface(node):
    if isinstance(node, Atom):
        return atom_to_surface(node)
    if isinstance(node, Conj):
        return fm.conj([to_surface(n) for n in node.items])
    return fm.disj([to_surface(n) for n in node.items])


# Public operations -----------------------------------------------------------

def eliminate(f):
    """Quantifier-free formula equivalent to f over (N,+)."""
    node = to_internal(f)
    _LOGGER.debug('eliminated to %d atoms', sum(1 for _ in atoms(node)))
    return to_surface(node)


def decide(f):
    free = fm.free_vars(f)
    if free:
        raise FreeVariablesPresent('not a sentence, free variables: %s'
                                   % ', '.join(sorted(free)))
    node = to_internal(f)
    if _is_true(node):
        return True
    if _is_false(node):
        return False
    return holds(node, {})


def closure(f):
    return fm.forall(sorted(fm.free_vars(f)), f)


def valid(f):
    """Truth of the universal closure of f."""
    return decide(closure(f))


def equivalent(f, g):
    return valid(fm.Iff(f, g))


def satisfiable(f):
    return decide(fm.exists(sorted(fm.free_vars(f)), f))


def holds_formula(f, assignment):
    """Truth of an arbitrary formula under an assignment of its free vars."""
    node = to_internal(f)
    return holds(node, {v: assignment[v] for v in node_vars(node)})
