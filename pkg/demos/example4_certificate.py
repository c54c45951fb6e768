"""
A seminormal monoid that is not phi-simplicial
==============================================

M = Z_+[x1, x2, x1 x4, x2^2 x4, x3 x4] sits at level 2 of the class chain even
though no variable has a pure power in every direction.  We check the
substitution by hand, then let the certifier rebuild it from hints.
"""

import json
from pathlib import Path

from affmon import AffineMonoid
from affmon.classes import (SubstitutionAutomorphism, certify_Mn, free_relabeling, gen1,
                            is_phi_simplicial, verify_automorphism, verify_certificate)
from affmon.cones import is_seminormal

doc = json.loads((Path(__file__).parent / "data" / "example4.json").read_text())
M = AffineMonoid(doc["ambient_rank"], tuple(map(tuple, doc["generators"])))

print("seminormal:", is_seminormal(M))
print("phi-simplicial:", is_phi_simplicial(M).kind)
print("degree-one part in x1:", gen1(M))

# x2 -> x2 + x1^p and x3 -> x3 + x1^p x4^(p-1); every added monomial lies in M
for p in (2, 3, 5):
    eta = SubstitutionAutomorphism.from_assignments(
        4, {1: (1, (p, 0, 0, 0)), 2: (1, (p, 0, 0, p - 1))}, fixed_variable=0)
    rep = verify_automorphism(M, eta, require_M1_form=True)
    print(f"p={p}:", "ok" if rep.ok else rep.failures, rep.checks)

cert = certify_Mn(M, hints=doc["hints"])
print("\ncertificate level", cert.level, "panel", f"{cert.panel.passed}/{cert.panel.total}")
rec = cert.recursion.monoid
print("recursion monoid:", sorted(rec.generators))
print("free relabeling:", free_relabeling(rec))
print("re-verified:", verify_certificate(cert, panel_size=10, seed=7).ok)
