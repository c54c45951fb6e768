"""
Normal and seminormal hulls
===========================

Walk through normalization, seminormalization and their witnesses on a few
small monoids.
"""

from affmon import AffineMonoid
from affmon.cones import (cone_of, interior_monoid, is_normal, is_seminormal, normalization,
                          seminormality_witness, seminormalization)
from affmon.monoid import membership

# the numerical semigroup <2, 3> misses 1, but 2 and 3 are both in it
ns = AffineMonoid(1, ((2,), (3,)))
print("<2,3> normal:", is_normal(ns), " seminormal:", is_seminormal(ns))
print("witness:", seminormality_witness(ns))
print("sn(<2,3>):", seminormalization(ns).generators)

# a two-dimensional example where the hulls differ
M = AffineMonoid(2, ((2, 0), (3, 0), (0, 1), (1, 1)))
C = cone_of(M)
print("\nrays:", sorted(C.rays), " facets:", sorted(C.facets))
sn = seminormalization(M)
n = normalization(M)
print("sn(M) generators:", sorted(sn.generators))
print("n(M) generators:", sorted(n.generators))
print("(1,0) in M?", membership(M, (1, 0)).kind, "  in sn(M)?", membership(sn, (1, 0)).kind)

# interior points of the free monoid of rank 2
inner = interior_monoid(AffineMonoid.free(2), degree_bound=6)
print("\ninterior of Z_+^2 up to degree 6 is generated by", inner.generators)
