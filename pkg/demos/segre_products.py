"""
Segre products
==============

The Segre monoid of an m x n grid of variables is the monoid of the ring
generated by x_i y_j.  Check the minor presentation, the level k(m,n) and the
recursion that drops one column.
"""

from affmon.segre import (hat_isomorphism, k_of, rees_segre_isomorphism, segre_certificate,
                          segre_monoid, verify_segre_iso)

for m, n in [(1, 3), (2, 2), (2, 3), (3, 4)]:
    S = segre_monoid(m, n)
    rep = verify_segre_iso(S, degree_bound=5)
    print(f"Segre({m},{n}): rank {S.monoid.rank}, k = {k_of(m, n)},",
          "iso ok" if rep.ok else rep.checks, f"({rep.elapsed:.2f} s)")

print("\nk table for 2 <= m <= n <= 6")
for m in range(2, 7):
    print(m, [k_of(m, n) for n in range(m, 7)])

# dropping the first column gives Segre(m, n-1) after forgetting one coordinate
iso = hat_isomorphism(segre_monoid(2, 4))
print("\nhat(Segre(2,4)) ~ Segre(2,3):", iso.ok)

cert = segre_certificate(segre_monoid(2, 3))
print("Segre(2,3) certificate level", cert.level, "rule", cert.rule.kind,
      "panel", f"{cert.panel.passed}/{cert.panel.total}")
print("chain:", [c.level for c in cert.chain()])

for m in range(1, 5):
    print(f"Rees monoid of (X1..X{m}) = Segre(2,{m}):", rees_segre_isomorphism(m).ok)
