"""Normality and seminormality of affine monoids.

n(M) = gp(M) ∩ R_+M is computed as a Hilbert basis in coordinates of gp(M).
sn(M) is generated by M together with, for every face F of the cone, the
points of gp(M ∩ F) in the relative interior of F that lie below the sum of
one generator per extreme ray of F.  Any other relative-interior point x of
F has a positive representation with some coefficient above 1, so
subtracting that generator stays in the relative interior.
"""

import os

from .lattice import Lattice, primitive, rational_rank
from .monoid import AffineMonoid, membership, members_up_to
from .polyhedral import RationalCone, _dot, hilbert_basis_coords


def default_degree_bound():
    return int(os.environ.get("AFFMON_DEGREE_BOUND", "40"))


class NotPointedError(ValueError):
    """Raised for monoids with nontrivial units where a positive monoid is needed."""


def cone_of(M):
    return M.cone


def _require_pointed(M):
    if M.unit_generators:
        raise NotPointedError(
            f"{M!r} has nontrivial units; apply restructure_generators and use the positive part")


def _coord_rays(cone):
    """Primitive extreme rays of a pointed cone, in coordinates of its lattice."""
    lat = cone.lattice
    k = lat.rank
    rays = []
    for g in cone.generators:
        c = primitive(lat.coords(g))
        active = [f for f in cone._coord_facets if _dot(f, c) == 0]
        if (rational_rank(active) if active else 0) == k - 1 and c not in rays:
            rays.append(c)
    return rays


def _hilbert_basis(cone):
    """Hilbert basis of lattice(cone) ∩ cone, as ambient vectors."""
    if cone.dimension == 0:
        return []
    lat = cone.lattice
    hb = hilbert_basis_coords(_coord_rays(cone), cone._coord_facets)
    return [lat.from_coords(h) for h in hb]


def normalization(M):
    """The normalization gp(M) ∩ R_+M, generated by its Hilbert basis."""
    _require_pointed(M)
    hb = _hilbert_basis(M.cone)
    hb.sort(key=lambda h: (_dot(M.grading, h), h))
    return AffineMonoid(M.ambient_rank, tuple(hb), name=f"n({M.name})" if M.name else None)


def is_normal(M):
    """True iff every x in gp(M) with some multiple in M already lies in M.

    A monoid with units is normal exactly when its unit lattice is saturated
    in gp(M) and the image of M modulo the units is normal.
    """
    if not M.unit_generators:
        return all(membership(M, h).is_member for h in _hilbert_basis(M.cone))
    gp = M.lattice
    sub = Lattice([gp.coords(u) for u in M.unit_generators], gp.rank)
    if any(d != 1 for d in sub.invariants):
        return False
    sp = M._split
    if not sp.nonunits:
        return True
    Q = AffineMonoid.from_generators(sp.images, len(sp.rows))
    return is_normal(Q)


def _face_gens(M, face):
    return [M.generators[i] for i in sorted(face)]


def _face_minimal_points(M, face):
    """Points of gp(M_F) in relint(F) below the sum of one generator per ray of F."""
    gens = _face_gens(M, face)
    if not gens:
        return []
    F = RationalCone.from_generators(gens, M.ambient_rank)
    chosen = {}
    grading = M.grading
    for g in gens:
        d = primitive(g)
        if d in F.rays and (d not in chosen or _dot(grading, g) < _dot(grading, chosen[d])):
            chosen[d] = g
    caps = [sum(_dot(t, g) for g in chosen.values()) for t in F.facets]
    hb = _hilbert_basis(F)
    zero = (0,) * M.ambient_rank
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for h in hb:
                y = tuple(a + b for a, b in zip(x, h))
                if y in seen:
                    continue
                if all(_dot(t, y) <= c for t, c in zip(F.facets, caps)):
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted((x for x in seen if any(x) and F.in_relative_interior(x)),
                  key=lambda x: (_dot(grading, x), x))


def _seminormal_extra(M):
    """New elements of sn(M) that together with M generate it; empty iff M is seminormal."""
    _require_pointed(M)
    # faces of a normal monoid are normal and contribute nothing
    if is_normal(M):
        return []
    extra = []
    for face in M.cone.faces():
        gens = _face_gens(M, face)
        if gens:
            F = RationalCone.from_generators(gens, M.ambient_rank)
            if all(membership(M, h).is_member for h in _hilbert_basis(F)):
                continue
        for x in _face_minimal_points(M, face):
            if x not in extra and not membership(M, x).is_member:
                extra.append(x)
    return extra


def seminormalization(M):
    """The seminormalization sn(M): all x in gp(M) with 2x, 3x in M, closed over M."""
    extra = _seminormal_extra(M)
    gens = list(M.generators) + extra
    out = AffineMonoid.from_generators(gens, M.ambient_rank,
                                       name=f"sn({M.name})" if M.name else None)
    return minimize_generators(out) if extra else out


def _witness_failure(M):
    """An x in n(M) outside M with 2x and 3x in M, searching the Hilbert basis of n(M)."""
    for h in _hilbert_basis(M.cone):
        if membership(M, h).is_member:
            continue
        if (membership(M, tuple(2 * a for a in h)).is_member
                and membership(M, tuple(3 * a for a in h)).is_member):
            return h
    return None


def is_seminormal(M):
    extra = _seminormal_extra(M)
    hb_witness = _witness_failure(M)
    if hb_witness is not None and not extra:
        raise AssertionError(f"{hb_witness} violates seminormality but the face test missed it")
    return not extra


def seminormality_witness(M):
    """Some x not in M with 2x, 3x in M, or ``None`` when M is seminormal."""
    extra = _seminormal_extra(M)
    if not extra:
        return None
    # kx lies in M for all large k; the last multiple outside M is a witness
    x = extra[0]
    k = 1
    while True:
        y = tuple(k * a for a in x)
        if (not membership(M, y).is_member
                and membership(M, tuple(2 * a for a in y)).is_member
                and membership(M, tuple(3 * a for a in y)).is_member):
            return y
        k += 1


def minimize_generators(M):
    """Drop generators that are sums of the others (M must be positive)."""
    gens = sorted(M.generators, key=lambda g: (_dot(M.grading, g), g))
    keep = []
    for i, g in enumerate(gens):
        others = [h for h in gens if h != g and _dot(M.grading, h) <= _dot(M.grading, g)]
        if others:
            sub = AffineMonoid(M.ambient_rank, tuple(others))
            if membership(sub, g).is_member:
                continue
        keep.append(g)
    return AffineMonoid(M.ambient_rank, tuple(keep), name=M.name)


def interior_monoid(M, degree_bound=None):
    """Generators of M* = (int(R_+M) ∩ M) ∪ {0} up to a degree bound.

    M* is usually not finitely generated (for Z_+^2 every (1, k) is
    irreducible), so the result lists the irreducible interior elements of
    degree at most ``degree_bound`` in the grading of M.
    """
    _require_pointed(M)
    if M.rank == 0:
        raise ValueError("the zero monoid has no interior")
    if M.rank != M.ambient_rank:
        raise ValueError("the interior needs a cone spanning the ambient space")
    if degree_bound is None:
        degree_bound = default_degree_bound()
    cone = M.cone
    pts = [x for x in members_up_to(M, degree_bound)
           if any(x) and cone.in_relative_interior(x)]
    pts.sort(key=lambda x: (_dot(M.grading, x), x))
    inside = set(pts)
    irreducible = []
    for x in pts:
        if not any(tuple(a - b for a, b in zip(x, y)) in inside for y in irreducible):
            irreducible.append(x)
    name = f"{M.name}* (degree <= {degree_bound})" if M.name else f"M* (degree <= {degree_bound})"
    return AffineMonoid(M.ambient_rank, tuple(irreducible), name=name)
