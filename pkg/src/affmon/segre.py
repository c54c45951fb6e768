"""Segre monoids, their certificates, and Rees monoids of monomial ideals.

Segre(m, n) lives in Z_+^(m+n-1): x_1..x_n are the columns, x_(n+1)..x_(m+n-1)
the rows 2..m, and y_ij corresponds to x_j (i = 1) or x_j x_(n+i-1) (i > 1).
Indices in code are 0-based throughout.
"""

import time
from dataclasses import dataclass, field

from .classes import (CertificationInconclusive, MnCertificate, Rule, _check,
                      _auto_certificate, downgrade, free_certificate, is_phi_simplicial,
                      positive_certificate, segre_block)
from .lattice import Lattice
from .monoid import AffineMonoid, membership
from .polyalg import hat_monoid


@dataclass
class SegreDatum:
    m: int
    n: int
    monoid: AffineMonoid
    theta: dict  # (i, j) -> exponent vector
    phi: dict  # variable index -> {(i, j): exponent}

    @property
    def ambient_rank(self):
        return self.m + self.n - 1

    @property
    def cols(self):
        return list(range(self.n))

    @property
    def rows(self):
        return list(range(self.n, self.m + self.n - 1))


def segre_monoid(m, n):
    if m < 1 or n < 1:
        raise ValueError(f"Segre monoid needs m, n >= 1, got ({m}, {n})")
    r = m + n - 1

    def e(*idx):
        return tuple(int(k in idx) for k in range(r))

    theta = {}
    for j in range(n):
        theta[(0, j)] = e(j)
    for i in range(1, m):
        for j in range(n):
            theta[(i, j)] = e(j, n + i - 1)
    phi = {j: {(0, j): 1} for j in range(n)}
    for i in range(1, m):
        phi[n + i - 1] = {(0, 0): -1, (i, 0): 1}
    gens = tuple(theta[(0, j)] for j in range(n)) + tuple(
        theta[(i, j)] for i in range(1, m) for j in range(n))
    return SegreDatum(m, n, AffineMonoid(r, gens, name=f"Segre({m},{n})"), theta, phi)


def k_of(m, n):
    """floor((m + n - 1) / min(m, n))."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return (m + n - 1) // min(m, n)


# -- isomorphism with the 2x2-minor presentation ------------------------------------

def _word_add(a, b, k=1):
    out = dict(a)
    for key, v in b.items():
        out[key] = out.get(key, 0) + k * v
        if not out[key]:
            del out[key]
    return out


def canonical_word(word):
    """Reduce modulo the minors: y_ij -> y_i1 + y_1j - y_11 for i, j > 1 (additively)."""
    out = {}
    for (i, j), v in word.items():
        if i and j:
            parts = {(i, 0): v, (0, j): v, (0, 0): -v}
        else:
            parts = {(i, j): v}
        out = _word_add(out, parts)
    return out


def _theta_word(S, word):
    r = S.ambient_rank
    v = [0] * r
    for key, k in word.items():
        for a, x in enumerate(S.theta[key]):
            v[a] += k * x
    return tuple(v)


def _phi_vector(S, vec):
    out = {}
    for a, k in enumerate(vec):
        if k:
            out = _word_add(out, S.phi[a], k)
    return out


@dataclass
class IsoReport:
    checks: dict = field(default_factory=dict)
    counterexamples: dict = field(default_factory=dict)
    elapsed: float = 0.0
    layers: int = 0

    @property
    def ok(self):
        return all(self.checks.values())


def verify_segre_iso(S, degree_bound=6):
    """Check that θ: y_ij -> x-monomials identifies the minor presentation with S.monoid.

    (a) θ respects the minors, (b) φ∘θ is the identity modulo the minors,
    (c) θ∘φ is the identity on the x variables, (d) rank m + n - 1, and
    (e) distinct canonical words of degree <= ``degree_bound`` have distinct images.
    """
    t0 = time.perf_counter()
    rep = IsoReport()
    m, n = S.m, S.n
    pairs = [(i, j) for i in range(m) for j in range(n)]

    bad = None
    relations = []
    for i in range(m):
        for k in range(m):
            if i == k:
                continue
            for j in range(n):
                for l in range(n):
                    if j == l:
                        continue
                    relations.append(((i, j), (k, l), (i, l), (k, j)))
    for a, b, c, d in relations:
        lhs = tuple(x + y for x, y in zip(S.theta[a], S.theta[b]))
        rhs = tuple(x + y for x, y in zip(S.theta[c], S.theta[d]))
        if lhs != rhs:
            bad = (a, b, c, d)
            break
    rep.checks["theta_respects_minors"] = bad is None
    if bad:
        rep.counterexamples["theta_respects_minors"] = bad

    # the reduction must identify both sides of every relation
    bad = None
    for a, b, c, d in relations:
        if canonical_word({a: 1, b: 1} if a != b else {a: 2}) != canonical_word(_word_add({c: 1}, {d: 1})):
            bad = (a, b, c, d)
            break
    rep.checks["reduction_joins_relations"] = bad is None
    if bad:
        rep.counterexamples["reduction_joins_relations"] = bad

    bad = None
    for y in pairs:
        if canonical_word(_phi_vector(S, S.theta[y])) != canonical_word({y: 1}):
            bad = y
            break
    rep.checks["phi_theta_identity"] = bad is None
    if bad:
        rep.counterexamples["phi_theta_identity"] = bad

    bad = None
    r = S.ambient_rank
    for a in range(r):
        e = tuple(int(k == a) for k in range(r))
        if _theta_word(S, S.phi[a]) != e:
            bad = a
            break
    rep.checks["theta_phi_identity"] = bad is None
    if bad is not None:
        rep.counterexamples["theta_phi_identity"] = f"x{bad + 1}"

    rep.checks["rank"] = S.monoid.rank == m + n - 1
    if not rep.checks["rank"]:
        rep.counterexamples["rank"] = S.monoid.rank

    # breadth-first over canonical words; images must stay distinct
    seen = {(): (0,) * r}
    images = {(0,) * r: ()}
    frontier = [{}]
    bad = None
    for layer in range(degree_bound):
        nxt = []
        for w in frontier:
            for y in pairs:
                c = canonical_word(_word_add(w, {y: 1}))
                key = tuple(sorted(c.items()))
                if key in seen:
                    continue
                img = _theta_word(S, c)
                seen[key] = img
                if img in images and images[img] != key:
                    bad = (images[img], key)
                images[img] = key
                nxt.append(c)
        frontier = nxt
        rep.layers = layer + 1
        if bad:
            break
    rep.checks["injective_on_layers"] = bad is None
    if bad:
        rep.counterexamples["injective_on_layers"] = bad
    rep.elapsed = time.perf_counter() - t0
    return rep


# -- certificates ------------------------------------------------------------------

def _segre_cert(M, cols, rows):
    m, n = len(rows) + 1, len(cols)
    k = k_of(m, n)
    if m == 1:
        return free_certificate(M, n, cols)
    if k == 1:
        return positive_certificate(M, cols[0], notes=(f"Segre({m},{n}) at level 1",))
    first = cols[0]
    r = M.ambient_rank

    def e(*idx):
        return tuple(int(a in idx) for a in range(r))

    pairs = [(e(first), tuple(e(cols[i]) for i in range(k)))]
    for j in range(1, m):
        row = rows[j - 1]
        S = (e(first, row),) + tuple(e(row, cols[i]) for i in segre_block(j, k))
        pairs.append((e(first, row), S))
    rule = Rule("segre", {"cols": list(cols), "rows": list(rows), "k": k})
    hat = hat_monoid(M, first)
    rec = _segre_cert(hat, cols[1:], rows)
    if rec.level > k - 1:
        rec = downgrade(rec, k - 1)
    return MnCertificate(M, k, first, tuple(pairs), rule, rec,
                         notes=(f"Segre({m},{n}): k = floor({m + n - 1}/{min(m, n)}) = {k}",))


def segre_certificate(S, panel_size=25, max_degree=6, seed=0):
    """Level-k(m, n) certificate.  For m > n it is built on Segre(n, m), which is isomorphic."""
    if S.m > S.n:
        T = segre_monoid(S.n, S.m)
        cert = segre_certificate(T, panel_size, max_degree, seed)
        cert.notes = cert.notes + (f"transposed: certificate for Segre({S.n},{S.m}) "
                                   f"≅ Segre({S.m},{S.n})",)
        return cert
    cert = _segre_cert(S.monoid, S.cols, S.rows)
    return _check(cert, panel_size, max_degree, seed)


def _ps_cert(N, cols):
    if len(cols) == 1:
        return positive_certificate(N, cols[0])
    first = cols[0]
    rule = Rule("ps", {"variables": list(cols[1:]), "cmax": 1})
    rec = _ps_cert(hat_monoid(N, first), cols[1:])
    return MnCertificate(N, len(cols), first, (), rule, rec, True, tuple(cols),
                         notes=("pure powers adjoined",))


def ps_certificate(S, N, panel_size=25, max_degree=6, seed=0):
    """Certificate for a seminormal N ⊇ S.monoid with a pure power of every variable."""
    from .cones import is_seminormal

    if N.ambient_rank != S.ambient_rank or not N.nonnegative:
        raise CertificationInconclusive("N must lie in the same Z_+^r as the Segre monoid")
    missing = [g for g in S.monoid.generators if not membership(N, g).is_member]
    if missing:
        raise CertificationInconclusive(f"N does not contain {missing[0]}")
    phi = is_phi_simplicial(N)
    if phi.kind != "yes":
        raise CertificationInconclusive(f"N lacks a pure power: {phi.reason}")
    if not is_seminormal(N):
        raise CertificationInconclusive("N is not seminormal")
    if S.m > S.n:
        # the column substitution needs m <= n in this embedding
        cert = _auto_certificate(N, S.m)
    else:
        cert = _ps_cert(N, S.cols)
    return _check(cert, panel_size, max_degree, seed)


# -- relabelings and Rees monoids -----------------------------------------------------

@dataclass
class LatticeIsomorphism:
    """x -> A x on exponent vectors, with A unimodular, matching generator sets."""

    matrix: list
    source: AffineMonoid
    target: AffineMonoid
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())

    def apply(self, v):
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.matrix)


def lattice_isomorphism(source, target, matrix):
    iso = LatticeIsomorphism([list(r) for r in matrix], source, target)
    src = Lattice([tuple(r) for r in matrix], len(matrix[0])) if matrix else None
    square = len(matrix) == len(matrix[0]) if matrix else True
    iso.checks["square"] = square
    iso.checks["unimodular"] = bool(square and src and src.rank == len(matrix)
                                    and all(d == 1 for d in src.invariants))
    iso.checks["generators_match"] = sorted(iso.apply(g) for g in source.generators) == sorted(
        target.generators)
    return iso


def coordinate_relabeling(source, target, coordinate_map):
    """Isomorphism sending coordinate a of ``source`` to coordinate coordinate_map[a] of ``target``.

    Coordinates of ``source`` that no generator uses may be dropped (mapped to None).
    """
    r_src, r_tgt = source.ambient_rank, target.ambient_rank
    rows = [[0] * r_src for _ in range(r_tgt)]
    for a, b in coordinate_map.items():
        if b is not None:
            rows[b][a] = 1
    iso = LatticeIsomorphism(rows, source, target)
    used = [a for a in range(r_src) if any(g[a] for g in source.generators)]
    targets = [coordinate_map.get(a) for a in used]
    iso.checks["injective_on_support"] = None not in targets and len(set(targets)) == len(targets)
    iso.checks["generators_match"] = sorted(iso.apply(g) for g in source.generators) == sorted(
        target.generators)
    return iso


def hat_isomorphism(S):
    """The face x_1 = 0 of Segre(m, n) is Segre(m, n - 1) after dropping coordinate 1."""
    if S.n < 2:
        raise ValueError("needs n >= 2")
    hat = hat_monoid(S.monoid, 0)
    T = segre_monoid(S.m, S.n - 1)
    cmap = {0: None}
    cmap.update({a: a - 1 for a in range(1, S.ambient_rank)})
    return coordinate_relabeling(hat, T.monoid, cmap)


def rees_monoid(ideal_gens, extended=False):
    """Monoid of B[It] for a monomial ideal I of B = R[X_1..X_m]: e_1..e_m and a + e_(m+1).

    ``extended`` also adjoins -e_(m+1) (the extended Rees algebra B[It, t^-1]).
    """
    gens = [tuple(int(x) for x in a) for a in ideal_gens]
    if not gens:
        raise ValueError("the ideal needs at least one generator")
    m = len(gens[0])
    for a in gens:
        if len(a) != m or any(x < 0 for x in a) or not any(a):
            raise ValueError(f"ideal generators must be nonzero nonnegative vectors of length {m}: {a}")
    r = m + 1
    out = [tuple(int(k == i) for k in range(r)) for i in range(m)]
    out += [a + (1,) for a in gens]
    if extended:
        out.append((0,) * m + (-1,))
    return AffineMonoid.from_generators(out, r, name="extended Rees" if extended else "Rees")


def rees_segre_isomorphism(m):
    """For I = (X_1..X_m) the Rees monoid is Segre(2, m) on the nose; verify the identity."""
    A = rees_monoid([tuple(int(k == i) for k in range(m)) for i in range(m)])
    S = segre_monoid(2, m)
    eye = [[int(i == j) for j in range(m + 1)] for i in range(m + 1)]
    return lattice_isomorphism(A, S.monoid, eye)
