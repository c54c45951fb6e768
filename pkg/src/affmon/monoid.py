"""Affine monoids: finitely generated submonoids of Z^r.

Cancellativity and torsion-freeness are automatic for submonoids of Z^r, so an
:class:`AffineMonoid` is just an ambient rank plus a generator list.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd

from .lattice import Lattice, lattice_rank, rational_rank
from .polyhedral import RationalCone, _dot, solve_rational

DEFAULT_SEARCH_BOUND = 64


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


@dataclass(frozen=True)
class AffineMonoid:
    ambient_rank: int
    generators: tuple
    name: str = field(default=None, compare=False)

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if len(g) != self.ambient_rank:
                raise ValueError(f"generator {g} does not have length {self.ambient_rank}")
            if not any(g):
                raise ValueError("the zero vector is not allowed as a generator")
        if len(set(gens)) != len(gens):
            raise ValueError("generators must be pairwise distinct")

    @classmethod
    def free(cls, r, name=None):
        """The free monoid Z_+^r on the unit vectors."""
        return cls(r, tuple(tuple(int(i == j) for j in range(r)) for i in range(r)),
                   name or f"Z+^{r}")

    @classmethod
    def from_generators(cls, gens, ambient_rank=None, name=None):
        """Build a monoid, silently dropping zero and repeated generators."""
        gens = [tuple(g) for g in gens]
        if ambient_rank is None:
            ambient_rank = len(gens[0])
        clean = list(dict.fromkeys(g for g in gens if any(g)))
        return cls(ambient_rank, tuple(clean), name)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"AffineMonoid({label}r={self.ambient_rank}, gens={list(self.generators)})"

    @cached_property
    def lattice(self):
        return Lattice(self.generators, self.ambient_rank)

    @cached_property
    def cone(self):
        return RationalCone.from_generators(self.generators, self.ambient_rank)

    @property
    def rank(self):
        return self.lattice.rank

    @property
    def nonnegative(self):
        return all(x >= 0 for g in self.generators for x in g)

    @cached_property
    def grading(self):
        if self.nonnegative:
            return (1,) * self.ambient_rank
        return self.cone.grading

    @cached_property
    def unit_generators(self):
        # -g in the real cone forces -g in M: N(-g) = sum n_i g_i gives -g = (N-1)g + sum n_i g_i
        return tuple(g for g in self.generators if self.cone.contains(_neg(g)))

    @cached_property
    def _split(self):
        return _UnitSplit(self)

    def __contains__(self, v):
        return membership(self, v).is_member

    def coordinate_support(self):
        """Ambient coordinates on which some generator is nonzero."""
        return [i for i in range(self.ambient_rank) if any(g[i] for g in self.generators)]


@dataclass(frozen=True)
class MembershipVerdict:
    kind: str  # "member" | "non_member" | "unknown"
    witness: tuple = None
    reason: str = None
    search_bound: int = None

    @property
    def is_member(self):
        return self.kind == "member"

    def __bool__(self):
        return self.is_member


def monoid_rank(M):
    return lattice_rank(M.generators, M.ambient_rank)


def nonnegative_combination(vectors, target):
    """Nonnegative rationals ``lam`` with ``sum(lam_i * vectors[i]) == target``, or ``None``.

    Tries every linearly independent subset of maximal size (Caratheodory).
    """
    vectors = [tuple(v) for v in vectors]
    dim = len(target)
    if not any(target):
        return [Fraction(0)] * len(vectors)
    if not vectors:
        return None
    lat = Lattice(vectors, dim)
    if not lat.in_span(target):
        return None
    k = lat.rank
    coords = [lat.rational_coords(v) for v in vectors]
    t = lat.rational_coords(target)
    for combo in combinations(range(len(vectors)), k):
        sub = [coords[j] for j in combo]
        if rational_rank(sub) < k:
            continue
        S = [[sub[j][i] for j in range(k)] for i in range(k)]
        lam = solve_rational(S, t)
        if all(x >= 0 for x in lam):
            out = [Fraction(0)] * len(vectors)
            for j, x in zip(combo, lam):
                out[j] = x
            return out
    return None


def _pointed_search(gens, grading, cone, target, accept=None, limit=None):
    """Depth-first search for Z_+-combinations of ``gens`` equal to ``target``.

    Every generator has positive ``grading`` so the search is finite.  Partial
    residuals outside the cone are pruned and residuals known to have no
    representation are remembered.  Returns the first coefficient vector that
    ``accept`` approves (default: any), ``None`` when there is none, or
    ``"limit"`` after ``limit`` rejected representations.
    """
    n = len(gens)
    gdeg = [_dot(grading, g) for g in gens]
    dead = set()
    counts = [0] * n
    examined = 0
    # frame: residual, smallest generator index allowed, next index to try, saw a representation
    stack = [[tuple(target), 0, 0, False]]
    while stack:
        top = stack[-1]
        res, start, nxt, _ = top
        if not any(res):
            examined += 1
            c = tuple(counts)
            if accept is None or accept(c):
                return c
            if limit is not None and examined >= limit:
                return "limit"
            stack.pop()
            if not stack:
                return None
            parent = stack[-1]
            counts[parent[2] - 1] -= 1
            parent[3] = True
            continue
        rdeg = _dot(grading, res)
        child = None
        for j in range(nxt, n):
            if gdeg[j] > rdeg:
                continue
            nr = _sub(res, gens[j])
            if (nr, j) not in dead and cone.contains(nr):
                child = (nr, j)
                break
        if child is not None:
            nr, j = child
            top[2] = j + 1
            counts[j] += 1
            stack.append([nr, j, j, False])
            continue
        stack.pop()
        if not top[3]:
            dead.add((res, start))
        if stack:
            parent = stack[-1]
            counts[parent[2] - 1] -= 1
            parent[3] = parent[3] or top[3]
    return None


class _UnitSplit:
    """Quotient of M by its unit group, used for exact membership when M has units."""

    def __init__(self, M):
        units = list(M.unit_generators)
        self.units = units
        self.unit_lattice = Lattice(units, M.ambient_rank)
        self.gp = M.lattice
        self.rows = Lattice([self.gp.coords(u) for u in units], self.gp.rank).span_equations
        self.nonunits = [g for g in M.generators if g not in units]
        self.images = [self.project(g) for g in self.nonunits]
        if self.nonunits:
            self.qcone = RationalCone.from_generators(self.images, len(self.rows))
        # a relation sum(n_i u_i) = 0 with every n_i >= 1: shifting by it makes
        # any integer combination of units nonnegative
        rel = [Fraction(0)] * len(units)
        for j, u in enumerate(units):
            lam = nonnegative_combination(units, _neg(u))
            rel[j] += 1
            for i, x in enumerate(lam):
                rel[i] += x
        den = 1
        for x in rel:
            den = den * x.denominator // gcd(den, x.denominator)
        self.relation = [int(x * den) for x in rel]

    def project(self, v):
        c = self.gp.coords(v)
        return tuple(_dot(r, c) for r in self.rows)

    def unit_witness(self, u):
        """Nonnegative coefficients over the unit generators summing to ``u``."""
        c = list(self.unit_lattice.generator_coefficients(u))
        shift = max([0] + [-(a // n) for a, n in zip(c, self.relation) if a < 0])
        return [a + shift * n for a, n in zip(c, self.relation)]


def membership(M, v, bound=DEFAULT_SEARCH_BOUND):
    """Decide whether ``v`` lies in ``M``.

    Positive monoids get a complete search: a positive grading makes every
    step strictly decrease degree.  For monoids with units the search runs in
    the pointed quotient by the unit group and the remainder is checked in the
    unit lattice.  ``bound`` caps the number of quotient representations tried
    and only hitting that cap yields ``unknown``.
    """
    v = tuple(v)
    if len(v) != M.ambient_rank:
        raise ValueError(f"vector {v} does not have length {M.ambient_rank}")
    n = len(M.generators)
    if not any(v):
        return MembershipVerdict("member", (0,) * n)
    if v not in M.lattice:
        return MembershipVerdict("non_member", reason="lattice-exclusion")
    if not M.cone.contains(v):
        return MembershipVerdict("non_member", reason="cone-exclusion")
    if not M.unit_generators:
        c = _pointed_search(list(M.generators), M.grading, M.cone, v)
        if c is None:
            return MembershipVerdict("non_member", reason="exhausted-search")
        return MembershipVerdict("member", c)

    sp = M._split

    def remainder(c):
        rest = v
        for k, g in zip(c, sp.nonunits):
            if k:
                rest = tuple(a - k * b for a, b in zip(rest, g))
        return rest

    zero = (0,) * len(sp.nonunits)
    if remainder(zero) in sp.unit_lattice:
        found = zero
    elif not sp.nonunits:
        found = None
    else:
        found = _pointed_search(sp.images, sp.qcone.grading, sp.qcone, sp.project(v),
                                accept=lambda c: remainder(c) in sp.unit_lattice, limit=bound)
    if found == "limit":
        return MembershipVerdict("unknown", search_bound=bound)
    if found is None:
        return MembershipVerdict("non_member", reason="exhausted-search")
    index = {g: i for i, g in enumerate(M.generators)}
    witness = [0] * n
    for k, g in zip(found, sp.nonunits):
        witness[index[g]] += k
    for k, u in zip(sp.unit_witness(remainder(found)), sp.units):
        witness[index[u]] += k
    return MembershipVerdict("member", tuple(witness))


def units(M):
    """A Z-basis of the unit group U(M)."""
    return list(Lattice(M.unit_generators, M.ambient_rank).basis)


def is_positive(M):
    return not M.unit_generators


@dataclass(frozen=True)
class Restructured:
    unit_pairs: tuple
    positive_part: AffineMonoid
    split: bool

    def __iter__(self):
        return iter((self.unit_pairs, self.positive_part))


def restructure_generators(M):
    """Split the generators into unit pairs (w, -w) and a positive part V with M = U(M) + V.

    ``split`` is true when gp(V) meets U(M) only in 0.  If the non-unit
    generators do not already achieve that and U(M) is saturated in gp(M),
    their unit components are subtracted off; a non-saturated unit lattice
    leaves the non-unit generators unchanged with ``split`` false.
    """
    basis = units(M)
    pairs = tuple((w, _neg(w)) for w in basis)
    nonunits = [g for g in M.generators if g not in M.unit_generators]

    def meets_trivially(vs):
        return lattice_rank(list(vs) + basis, M.ambient_rank) == lattice_rank(vs, M.ambient_rank) + len(basis)

    split = meets_trivially(nonunits)
    if not split:
        gp = M.lattice
        sub = Lattice([gp.coords(w) for w in basis], gp.rank)
        if all(d == 1 for d in sub.invariants):
            moved = []
            for g in nonunits:
                c = gp.coords(g)
                w = [sum(a * b for a, b in zip(row, c)) for row in sub._U[:sub.rank]]
                moved.append(_sub(g, gp.from_coords(sub.from_coords(w))))
            nonunits = list(dict.fromkeys(moved))
            split = True
    V = AffineMonoid(M.ambient_rank, tuple(nonunits), name="positive part")
    return Restructured(pairs, V, split)


def members_up_to(M, degree, grading=None):
    """All members of M of grading at most ``degree`` (M must be positive)."""
    if grading is None:
        grading = M.grading
    gens = [(g, _dot(grading, g)) for g in M.generators]
    zero = (0,) * M.ambient_rank
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            dx = _dot(grading, x)
            for g, dg in gens:
                if dx + dg <= degree:
                    y = _add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return seen


def same_monoid(A, B):
    """True iff A and B are equal as submonoids of Z^r (mutual generator membership)."""
    if A.ambient_rank != B.ambient_rank:
        return False
    return (all(membership(B, g).is_member for g in A.generators)
            and all(membership(A, g).is_member for g in B.generators))
