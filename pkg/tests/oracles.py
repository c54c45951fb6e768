"""Slow, independent reference computations used to freeze expected values.

Nothing here calls into affmon's lattice or polyhedral code.
"""

from fractions import Fraction
from itertools import combinations, product

import sympy


def hnf_rows(vectors):
    """Row echelon basis of the Z-span of ``vectors`` by repeated gcd elimination."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    if not rows:
        return basis
    r = len(rows[0])
    col = 0
    while rows and col < r:
        live = [v for v in rows if v[col]]
        rest = [v for v in rows if not v[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda v: abs(v[col]))
            p = live[0]
            nxt = [p]
            for v in live[1:]:
                q = v[col] // p[col]
                w = [a - q * b for a, b in zip(v, p)]
                if w[col]:
                    nxt.append(w)
                elif any(w):
                    rest.append(w)
            live = nxt
        p = live[0]
        if p[col] < 0:
            p = [-a for a in p]
        basis.append(p)
        rows = rest
        col += 1
    return basis


def in_lattice(x, basis):
    x = list(x)
    for p in basis:
        col = next(i for i, a in enumerate(p) if a)
        if x[col] % p[col]:
            return False
        q = x[col] // p[col]
        x = [a - q * b for a, b in zip(x, p)]
    return not any(x)


def cone_membership_oracle(gens):
    """x in R_+ gens iff x is a nonnegative combination of some independent subset."""
    gens = [tuple(g) for g in gens]
    k = sympy.Matrix(gens).rank()
    solvers = []
    for sub in combinations(gens, k):
        B = sympy.Matrix(sub).T
        if B.rank() < k:
            continue
        L = (B.T * B).inv() * B.T
        L = [[Fraction(int(L[i, j].p), int(L[i, j].q)) for j in range(L.cols)] for i in range(L.rows)]
        solvers.append((sub, L))

    def contains(x):
        for sub, L in solvers:
            lam = [sum(a * b for a, b in zip(row, x)) for row in L]
            if any(l < 0 for l in lam):
                continue
            if all(sum(l * s[i] for l, s in zip(lam, sub)) == x[i] for i in range(len(x))):
                return True
        return not any(x)
    return contains


def saturation_points(gens, degree):
    """gp(M) ∩ R_+M with coordinate sum <= degree, for nonnegative generators."""
    r = len(gens[0])
    basis = hnf_rows(gens)
    contains = cone_membership_oracle(gens)
    out = set()
    for x in product(range(degree + 1), repeat=r):
        if sum(x) <= degree and in_lattice(x, basis) and contains(x):
            out.add(x)
    return out


def monoid_points(gens, degree):
    """Sums of generators with coordinate sum <= degree (nonnegative generators)."""
    seen = {(0,) * len(gens[0])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(a + b for a, b in zip(x, g))
                if sum(y) <= degree and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def numerical_semigroup(gens, limit):
    """Members of Z_+[gens] up to ``limit`` by dynamic programming."""
    ok = [False] * (limit + 1)
    ok[0] = True
    for v in range(1, limit + 1):
        ok[v] = any(v >= g and ok[v - g] for g in gens)
    return {v for v in range(limit + 1) if ok[v]}


def smith_diagonal(A):
    """Invariant factors through sympy."""
    from sympy.matrices.normalforms import smith_normal_form
    D = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
    return [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]
