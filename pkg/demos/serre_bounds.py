"""
Serre dimension bounds
======================

Feed a few monoids to the bound engine and print every rule that fires.
"""

from affmon import AffineMonoid
from affmon.bounds import RingProfile, serre_bound
from affmon.classes import free_certificate
from affmon.segre import rees_monoid, segre_monoid


def show(title, rep):
    print(f"\n{title}  (best {rep.best})")
    for e in rep.entries:
        print(f"  {e.rule:5} {e.bound:3}  {e.quote:22} {', '.join(e.hypotheses)}")


Z2 = AffineMonoid.free(2)
show("Z_+^2 over a 3-dimensional ring", serre_bound(Z2, RingProfile(3), cert=free_certificate(Z2)))
show("Veronese <(2,0),(1,1),(0,2)>, d=1",
     serre_bound(AffineMonoid(2, ((2, 0), (1, 1), (0, 2))), RingProfile(1)))
show("Segre(2,3), d=2", serre_bound(segre_monoid(2, 3).monoid, RingProfile(2)))
show("Rees monoid of (X1,X2,X3), d=2",
     serre_bound(rees_monoid([(1, 0, 0), (0, 1, 0), (0, 0, 1)]), RingProfile(2), auto_certify=False))
show("Rees monoid of (X1), d=2", serre_bound(rees_monoid([(1,)]), RingProfile(2), auto_certify=False))
