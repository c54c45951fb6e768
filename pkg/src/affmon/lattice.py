"""Exact integer linear algebra: Smith normal form, lattice rank and membership.

Matrices are plain lists of lists of Python ints.  Nothing in this module
touches floating point.
"""

from fractions import Fraction
from functools import cached_property
from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def transpose(A, rows=None):
    if not A:
        return [[] for _ in range(rows or 0)]
    return [list(col) for col in zip(*A)]


def determinant(A):
    """Exact determinant of a square integer (or rational) matrix."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    assert det.denominator == 1 or any(isinstance(x, Fraction) for row in A for x in row)
    return det.numerator if det.denominator == 1 else det


def rational_rank(rows):
    """Rank over Q of a list of integer or rational vectors."""
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return 0
    rank = 0
    ncols = len(M[0])
    for c in range(ncols):
        p = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if p is None:
            continue
        M[rank], M[p] = M[p], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c]:
                f = M[r][c] / M[rank][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


def primitive(v):
    """Scale a rational vector to the primitive integer vector with the same direction."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        return tuple(w)
    return tuple(x // g for x in w)


def smith_normal_form(A):
    """Return ``(U, D, V)`` with ``U * A * V == D`` and ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...``.  Pivots are the
    entries of minimal absolute value, which keeps intermediate swell down.
    """
    U, D, V, _ = _snf(A)
    return U, D, V


def _snf(A):
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = identity(m)
    Uinv = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        D[i] = [a + c * b for a, b in zip(D[i], D[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for row in Uinv:
            row[j] -= c * row[i]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_col(i, j, c):
        # col_i += c * col_j
        for row in D:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = D[i][j]
                    if a and (best is None or abs(a) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, D, V, Uinv
            i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            negate_row(t)
    return U, D, V, Uinv


def is_unimodular(U):
    return len(U) == 0 or abs(determinant(U)) == 1


def _columns(vs, dim):
    """Matrix whose columns are the vectors ``vs`` (dim x len(vs))."""
    return [[v[i] for v in vs] for i in range(dim)]


class Lattice:
    """The subgroup of Z^r generated by a finite list of integer vectors.

    Built from one Smith decomposition of the column matrix of the
    generators; gives a basis, coordinates, membership and the rational span.
    """

    def __init__(self, vectors, dim=None):
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if dim is None:
            if not vectors:
                raise ValueError("dimension required for an empty generator list")
            dim = len(vectors[0])
        if any(len(v) != dim for v in vectors):
            raise ValueError("vectors of unequal length")
        self.dim = dim
        self.generators = vectors
        if vectors:
            U, D, V, Uinv = _snf(_columns(vectors, dim))
        else:
            U, D, V, Uinv = identity(dim), [[] for _ in range(dim)], [], identity(dim)
        self._U, self._V, self._Uinv = U, V, Uinv
        self.invariants = [D[i][i] for i in range(min(dim, len(vectors))) if D[i][i]]
        self.rank = len(self.invariants)

    @cached_property
    def basis(self):
        """A Z-basis of the lattice, as tuples of length ``dim``."""
        return [tuple(d * self._Uinv[row][i] for row in range(self.dim))
                for i, d in enumerate(self.invariants)]

    @cached_property
    def span_equations(self):
        """Integer rows whose common kernel is the rational span of the lattice."""
        return [tuple(self._U[i]) for i in range(self.rank, self.dim)]

    def in_span(self, v):
        return all(sum(a * b for a, b in zip(row, v)) == 0 for row in self.span_equations)

    def rational_coords(self, v):
        """Coordinates of a vector of the rational span with respect to ``basis``."""
        w = [sum(a * b for a, b in zip(self._U[i], v)) for i in range(self.dim)]
        if any(w[i] for i in range(self.rank, self.dim)):
            raise ValueError(f"{tuple(v)} is outside the span of the lattice")
        return [Fraction(w[i], d) for i, d in enumerate(self.invariants)]

    def coords(self, v):
        """Integer coordinates of ``v`` in ``basis``, or ``None`` if ``v`` is not in the lattice."""
        if not self.in_span(v):
            return None
        c = self.rational_coords(v)
        if any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    def from_coords(self, c):
        out = [0] * self.dim
        for x, b in zip(c, self.basis):
            if x:
                for i in range(self.dim):
                    out[i] += x * b[i]
        return tuple(out)

    def __contains__(self, v):
        return self.coords(v) is not None

    def functional_to_ambient(self, y):
        """Lift a functional on lattice coordinates to a primitive integer functional on Z^dim.

        The lift agrees, up to a positive scalar, with ``y`` on the rational span.
        """
        row = [Fraction(0)] * self.dim
        for yi, d, urow in zip(y, self.invariants, self._U):
            if yi:
                for j in range(self.dim):
                    row[j] += Fraction(yi * urow[j], d)
        return primitive(row)

    def generator_coefficients(self, v):
        """Integer coefficients c with sum(c_i * generators[i]) == v, or ``None``."""
        if not self.generators:
            return () if not any(v) else None
        if not self.in_span(v):
            return None
        w = [sum(a * b for a, b in zip(self._U[i], v)) for i in range(self.dim)]
        y = []
        for i, d in enumerate(self.invariants):
            if w[i] % d:
                return None
            y.append(w[i] // d)
        y += [0] * (len(self.generators) - len(y))
        return tuple(sum(self._V[i][j] * y[j] for j in range(len(y)))
                     for i in range(len(self.generators)))


def lattice_rank(vs, dim=None):
    """Rank of the subgroup of Z^r generated by ``vs`` (0 for an empty list)."""
    vs = list(vs)
    if not vs:
        return 0
    return Lattice(vs, dim).rank


def lattice_member(v, basis):
    """Integer coefficients expressing ``v`` in terms of ``basis``, or ``None``."""
    basis = list(basis)
    lat = Lattice(basis, len(v))
    c = lat.generator_coefficients(tuple(v))
    if c is not None:
        assert tuple(sum(ci * b[k] for ci, b in zip(c, basis)) for k in range(len(v))) == tuple(v)
    return c
