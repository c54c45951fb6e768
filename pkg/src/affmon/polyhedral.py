"""Rational polyhedral cones: double description, faces, triangulation.

All arithmetic is exact (ints and ``Fraction``).  Cones are given by integer
generators in Z^r; internally they are handled in coordinates of the lattice
spanned by the generators so that every cone is full-dimensional there.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .lattice import Lattice, primitive, rational_rank, _snf


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def solve_rational(S, x):
    """Solve ``S * lam = x`` for square invertible ``S`` (rows of S are rows)."""
    n = len(S)
    M = [[Fraction(S[i][j]) for j in range(n)] + [Fraction(x[i])] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [a / piv for a in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[i][n] for i in range(n)]


def dual_extreme_rays(rows):
    """Extreme rays of ``{y : a . y >= 0 for a in rows}`` by double description.

    ``rows`` must have full column rank ``k`` so the cone is pointed.  Returns
    primitive integer vectors.
    """
    rows = [tuple(r) for r in rows]
    k = len(rows[0])
    basis_idx = []
    for i, r in enumerate(rows):
        if rational_rank([rows[j] for j in basis_idx] + [r]) > len(basis_idx):
            basis_idx.append(i)
        if len(basis_idx) == k:
            break
    if len(basis_idx) < k:
        raise ValueError("inequality system does not have full column rank")
    # initial cone {A_K y >= 0} has the columns of A_K^{-1} as extreme rays
    AK = [rows[i] for i in basis_idx]
    rays = []
    for j in range(k):
        e = [1 if i == j else 0 for i in range(k)]
        rays.append(primitive(solve_rational(AK, e)))
    processed = list(basis_idx)
    for i, a in enumerate(rows):
        if i in basis_idx:
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        neg = [r for r, v in zip(rays, vals) if v < 0]
        new = [r for r, v in zip(rays, vals) if v >= 0]
        for p in pos:
            zp = {j for j in processed if _dot(rows[j], p) == 0}
            ap = _dot(a, p)
            for q in neg:
                common = [rows[j] for j in zp if _dot(rows[j], q) == 0]
                if len(common) < k - 2 or rational_rank(common) != k - 2:
                    continue
                aq = _dot(a, q)
                new.append(primitive([ap * y - aq * x for x, y in zip(p, q)]))
        rays = list(dict.fromkeys(new))
        processed.append(i)
    return rays


@dataclass
class RationalCone:
    """The cone R_+ spanned by integer generators.

    ``facets`` are primitive integer inward normals and ``equations`` cut out
    the linear span, so ``x`` lies in the cone iff every equation vanishes on
    it and every facet pairs nonnegatively with it.  ``rays`` lists the
    extreme rays (primitive) of a pointed cone; for a cone with lineality the
    primitive generator directions are listed instead.
    """

    generators: list
    dim_ambient: int
    facets: list = field(default_factory=list)
    equations: list = field(default_factory=list)
    rays: list = field(default_factory=list)
    dimension: int = 0
    pointed: bool = True

    @classmethod
    def from_generators(cls, gens, dim):
        gens = [tuple(g) for g in gens if any(g)]
        lat = Lattice(gens, dim)
        cone = cls(generators=gens, dim_ambient=dim, equations=lat.span_equations,
                   dimension=lat.rank)
        cone._lattice = lat
        if lat.rank == 0:
            return cone
        coords = [lat.coords(g) for g in gens]
        cone._coord_facets = dual_extreme_rays(coords)
        cone.facets = [lat.functional_to_ambient(y) for y in cone._coord_facets]
        k = lat.rank
        cone.pointed = rational_rank(cone._coord_facets) == k if cone._coord_facets else False
        dirs = list(dict.fromkeys(primitive(g) for g in gens))
        if cone.pointed:
            rays = []
            for d in dirs:
                active = [f for f in cone.facets if _dot(f, d) == 0]
                if (rational_rank(active) if active else 0) == k - 1:
                    rays.append(d)
            cone.rays = rays
        else:
            cone.rays = dirs
        return cone

    @property
    def lattice(self):
        return self._lattice

    def facet_values(self, v):
        return [_dot(f, v) for f in self.facets]

    def in_span(self, v):
        return all(_dot(e, v) == 0 for e in self.equations)

    def contains(self, v):
        return self.in_span(v) and all(_dot(f, v) >= 0 for f in self.facets)

    def in_relative_interior(self, v):
        if not self.in_span(v):
            return False
        if self.dimension == 0:
            return True
        return all(_dot(f, v) > 0 for f in self.facets)

    def check_duality(self):
        """Every generator pairs nonnegatively with every facet and lies in the span."""
        return all(self.contains(g) for g in self.generators)

    @cached_property
    def grading(self):
        """An integer functional, positive on every nonzero point of a pointed cone."""
        if not self.pointed:
            raise ValueError("cone has a lineality space; no positive grading")
        g = [0] * self.dim_ambient
        for f in self.facets:
            g = [a + b for a, b in zip(g, f)]
        return tuple(g)

    def faces(self):
        """All faces, each as a frozenset of generator indices lying on it.

        The whole cone and the zero face (empty set) are included.
        """
        top = frozenset(range(len(self.generators)))
        on = [frozenset(i for i, g in enumerate(self.generators) if _dot(f, g) == 0)
              for f in self.facets]
        found = {top}
        frontier = [top]
        while frontier:
            nxt = []
            for face in frontier:
                for s in on:
                    sub = face & s
                    if sub != face and sub not in found:
                        found.add(sub)
                        nxt.append(sub)
            frontier = nxt
        found.add(frozenset())
        return sorted(found, key=lambda s: (len(s), sorted(s)))


def triangulate(vectors):
    """Pulling triangulation of a pointed cone given by its extreme rays.

    ``vectors`` are the extreme rays (integer tuples, any ambient dimension).
    Returns a list of index tuples, each a linearly independent set of rays
    spanning a full-dimensional simplicial subcone; together they cover the cone.
    """
    vectors = [tuple(v) for v in vectors]
    dim = len(vectors[0])

    def rec(idx):
        d = rational_rank([vectors[i] for i in idx])
        if len(idx) == d:
            return [tuple(idx)]
        apex = idx[0]
        sub = RationalCone.from_generators([vectors[i] for i in idx], dim)
        out = []
        for f in sub.facets:
            facet = [i for i in idx if _dot(f, vectors[i]) == 0]
            if apex in facet:
                continue
            for simplex in rec(facet):
                out.append((apex,) + simplex)
        return out

    return rec(list(range(len(vectors))))


def parallelepiped_points(S):
    """Lattice points of the half-open parallelepiped spanned by the columns of ``S``.

    ``S`` is a square invertible integer matrix (list of rows).  Returns one
    representative of every class of Z^k / S Z^k, including the origin.
    """
    k = len(S)
    U, D, V, Uinv = _snf(S)
    ds = [D[i][i] for i in range(k)]
    reps = [()]
    for d in ds:
        reps = [r + (a,) for r in reps for a in range(d)]
    out = []
    for a in reps:
        x = [sum(Uinv[i][j] * a[j] for j in range(k)) for i in range(k)]
        lam = solve_rational(S, x)
        frac = [l - (l.numerator // l.denominator) for l in lam]
        p = [sum(S[i][j] * frac[j] for j in range(k)) for i in range(k)]
        assert all(c.denominator == 1 for c in p)
        out.append(tuple(int(c) for c in p))
    return out


def hilbert_basis_coords(ray_coords, facet_coords):
    """Hilbert basis of Z^k intersected with a full-dimensional pointed cone.

    ``ray_coords`` are the extreme rays and ``facet_coords`` the inward facet
    normals, both in Z^k.  Candidates come from the fundamental parallelepipeds
    of a triangulation; reducible candidates are discarded.
    """
    rays = [primitive(r) for r in ray_coords]
    k = len(rays[0])
    cands = set(rays)
    for simplex in triangulate(rays):
        S = [[rays[j][i] for j in simplex] for i in range(k)]
        for p in parallelepiped_points(S):
            if any(p):
                cands.add(p)

    def deg(x):
        return sum(_dot(f, x) for f in facet_coords)

    ordered = sorted(cands, key=lambda x: (deg(x), x))
    basis = []
    for x in ordered:
        reducible = False
        for g in ordered:
            if deg(g) >= deg(x):
                break
            diff = tuple(a - b for a, b in zip(x, g))
            if all(_dot(f, diff) >= 0 for f in facet_coords):
                reducible = True
                break
        if not reducible:
            basis.append(x)
    return basis
