import pytest

from affmon.monoid import (AffineMonoid, is_positive, membership, members_up_to, monoid_rank,
                           restructure_generators, same_monoid, units)
from affmon.segre import segre_monoid
from oracles import monoid_points, numerical_semigroup

NS = AffineMonoid(1, ((2,), (3,)))


def test_monoid_rank_examples():
    assert monoid_rank(AffineMonoid.free(2)) == 2
    assert monoid_rank(segre_monoid(2, 2).monoid) == 3
    assert monoid_rank(AffineMonoid(2, ((2, 3),))) == 1


def test_invariants_enforced():
    with pytest.raises(ValueError):
        AffineMonoid(2, ((0, 0),))
    with pytest.raises(ValueError):
        AffineMonoid(2, ((1, 0), (1, 0)))
    with pytest.raises(ValueError):
        AffineMonoid(2, ((1, 0, 0),))
    assert AffineMonoid.from_generators([(0, 0), (1, 0), (1, 0)], 2).generators == ((1, 0),)


def test_numerical_semigroup_against_dp():
    truth = numerical_semigroup([2, 3], 30)
    for v in range(31):
        assert membership(NS, (v,)).is_member == (v in truth)
    w = membership(NS, (7,)).witness
    assert 2 * w[0] + 3 * w[1] == 7 and w == (2, 1)
    assert membership(NS, (1,)).kind == "non_member"


def test_lattice_exclusion():
    M = AffineMonoid(2, ((1, 1), (1, -1)))
    v = membership(M, (1, 0))
    assert v.kind == "non_member" and v.reason == "lattice-exclusion"
    # exhaustive: nothing with odd coordinate sum is ever reached
    pts = set()
    for a in range(11):
        for b in range(11):
            pts.add((a + b, a - b))
    assert (1, 0) not in pts


def test_witnesses_reproduce_vector():
    M = segre_monoid(2, 3).monoid
    for x in sorted(monoid_points(list(M.generators), 4)):
        v = membership(M, x)
        assert v.is_member
        assert tuple(sum(c * g[i] for c, g in zip(v.witness, M.generators)) for i in range(4)) == x
    assert not membership(M, (0, 0, 0, 1))


def test_members_up_to_matches_oracle():
    M = AffineMonoid(3, ((1, 0, 2), (0, 1, 1), (2, 1, 0)))
    assert members_up_to(M, 9, (1, 1, 1)) == monoid_points(list(M.generators), 9)


def test_membership_with_units():
    M = AffineMonoid(2, ((1, 0), (-1, 0), (0, 1)))
    v = membership(M, (-5, 3))
    assert v.is_member
    assert tuple(sum(c * g[i] for c, g in zip(v.witness, M.generators)) for i in range(2)) == (-5, 3)
    assert all(c >= 0 for c in v.witness)
    assert not membership(M, (0, -1))


def test_membership_units_nonsaturated():
    # units generated by (2, 0); (1, 0) is in gp(M) only via (1, 1) - (0, 1)
    M = AffineMonoid(2, ((2, 0), (-2, 0), (1, 1), (0, 1)))
    assert membership(M, (1, 1)).is_member
    assert membership(M, (-1, 1)).is_member
    assert not membership(M, (1, 0))


def test_units_examples():
    assert units(AffineMonoid.free(2)) == []
    assert units(AffineMonoid(2, ((1, 0), (-1, 0), (0, 1)))) in ([(1, 0)], [(-1, 0)])
    assert units(AffineMonoid(2, ((1, 1), (-1, -1), (1, 0)))) in ([(1, 1)], [(-1, -1)])


def test_restructure_examples():
    pairs, V = restructure_generators(AffineMonoid.free(2))
    assert pairs == () and set(V.generators) == {(1, 0), (0, 1)}
    res = restructure_generators(AffineMonoid(2, ((1, 0), (-1, 0), (1, 1))))
    assert len(res.unit_pairs) == 1 and set(res.unit_pairs[0]) == {(1, 0), (-1, 0)}
    assert res.positive_part.generators == ((1, 1),) and res.split
    pairs, V = restructure_generators(AffineMonoid(2, ((1, 0), (-1, 0), (0, 1), (0, -1))))
    assert len(pairs) == 2 and V.generators == ()


def test_restructure_regenerates():
    M = AffineMonoid(3, ((1, 0, 0), (-1, 0, 0), (1, 1, 0), (2, 0, 1)))
    res = restructure_generators(M)
    gens = [w for pair in res.unit_pairs for w in pair] + list(res.positive_part.generators)
    assert same_monoid(M, AffineMonoid.from_generators(gens, 3))
    assert not res.positive_part.unit_generators


def test_is_positive_examples():
    assert is_positive(AffineMonoid.free(3))
    assert not is_positive(AffineMonoid(2, ((1, 0), (-1, 0))))
    for m in range(1, 5):
        for n in range(1, 5):
            M = segre_monoid(m, n).monoid
            assert is_positive(M) and units(M) == []
