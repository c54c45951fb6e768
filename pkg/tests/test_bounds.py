import pytest

from affmon.bounds import RingProfile, match_rees, match_segre, mu_bound, serre_bound
from affmon.classes import free_certificate
from affmon.monoid import AffineMonoid
from affmon.segre import k_of, rees_monoid, segre_monoid


def values(rep):
    return {e.rule: e.bound for e in rep.entries}


def test_profile_validation():
    with pytest.raises(ValueError):
        RingProfile(-1)


def test_free_rank_two():
    M = AffineMonoid.free(2)
    rep = serre_bound(M, RingProfile(3), cert=free_certificate(M))
    v = values(rep)
    assert v["R1"] == 4 and v["R3"] == 3
    # d + r - rank U(M) with trivial units, and the rank-2 specialization
    assert v["R2"] == 5 and v["R2.2"] == 3
    assert rep.best == 3


def test_segre_2_2():
    rep = serre_bound(segre_monoid(2, 2).monoid, RingProfile(1))
    v = values(rep)
    assert v["R1"] == 3 and v["R4"] == 3 and v["R3"] == 3
    assert rep.best == 3


def test_normal_rank_two_reaches_d():
    for gens in [((1, 0), (1, 1), (1, 2)), ((2, 1), (1, 2), (1, 1)), ((1, 0), (-1, 0), (0, 1))]:
        for d in (0, 1, 4):
            rep = serre_bound(AffineMonoid(2, gens), RingProfile(d))
            assert rep.best <= d


def test_hypotheses_tagged():
    for M in [AffineMonoid.free(2), segre_monoid(2, 3).monoid, AffineMonoid(1, ((2,), (3,)))]:
        rep = serre_bound(M, RingProfile(2), assertions=("quasi_normal", "quasi_truncated"))
        for e in rep.entries:
            assert e.hypotheses
            assert all(h == "unconditional" or h.startswith(("certified:", "asserted-by-user:", "cert:", "k(m,n)", "discrepancy"))
                       for h in e.hypotheses)
        assert rep.best == min(e.bound for e in rep.entries)


def test_quasi_rule_needs_assertions():
    M = AffineMonoid.free(2)
    assert "R5" not in values(serre_bound(M, RingProfile(1)))
    rep = serre_bound(M, RingProfile(1), assertions=("quasi_normal", "quasi_truncated"))
    e = rep.entry("R5")
    assert e.bound == 1 and "asserted-by-user: quasi_normal" in e.hypotheses


def test_r3_monotone_in_level():
    M = AffineMonoid.free(3)
    c = free_certificate(M)
    from affmon.classes import downgrade
    bounds = [values(serre_bound(M, RingProfile(2), cert=downgrade(c, k)))["R3"] for k in (1, 2, 3)]
    assert bounds == sorted(bounds, reverse=True)


def test_segre_rules_agree():
    for m in range(1, 5):
        for n in range(1, 5):
            M = segre_monoid(m, n).monoid
            assert match_segre(M) == (m, n) or (m == 1 and match_segre(M) == (1, n))
            rep = serre_bound(M, RingProfile(1), panel_size=3)
            v = values(rep)
            assert v["R4"] == 1 + m + n - 1 - k_of(m, n)
            if m <= n and "R3" in v:
                assert v["R3"] == v["R4"]


def test_rees_rule():
    for m in range(1, 9):
        A = rees_monoid([tuple(int(k == i) for k in range(m)) for i in range(m)])
        assert match_rees(A) == m
        rep = serre_bound(A, RingProfile(2), auto_certify=False)
        r6, r4 = rep.entry("R6"), rep.entry("R4")
        assert r6.bound == (2 + (m + 1) // 2 if m % 2 else 2 + m // 2 + 1)
        assert r6.bound == r4.bound or any(h.startswith("discrepancy") for h in r6.hypotheses)
    # m = 1: Segre gives d, the Rees formula d + 1
    A = rees_monoid([(1,)])
    rep = serre_bound(A, RingProfile(2), auto_certify=False)
    assert rep.entry("R4").bound == 2 and rep.entry("R6").bound == 3


def test_rank_zero():
    rep = serre_bound(AffineMonoid(2, ()), RingProfile(3))
    assert [e.rule for e in rep.entries] == ["R0"] and rep.best == 3


def test_mu_bound():
    M = AffineMonoid.free(3)
    assert mu_bound(M, RingProfile(2), 2, free_certificate(M)) == 2 + 2
    assert mu_bound(M, RingProfile(2), 2) == 2 + 2 + 3 - 1
    assert mu_bound(AffineMonoid(1, ()), RingProfile(2), 3) == 5
    with pytest.raises(ValueError):
        mu_bound(AffineMonoid(1, ((2,), (3,))), RingProfile(1), 2)
    with pytest.raises(ValueError):
        mu_bound(M, RingProfile(1), 0)
