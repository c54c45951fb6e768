"""Randomized invariants, 200 cases per suite under the default profile."""

import json
from functools import lru_cache
from pathlib import Path

from hypothesis import given
from hypothesis import strategies as st

from affmon.classes import downgrade, free_certificate, certify_Mn, verify_certificate
from affmon.cones import is_normal, is_seminormal, normalization, seminormalization
from affmon.lattice import determinant, matmul, smith_normal_form
from affmon.monoid import AffineMonoid, membership, same_monoid
from affmon.polyalg import QQ, ZZ, Poly, is_quasi_monic, leading_data
from affmon.segre import segre_certificate, segre_monoid


@st.composite
def pointed_monoids(draw, max_rank=3, max_entry=4, max_gens=4):
    r = draw(st.integers(1, max_rank))
    vec = st.tuples(*[st.integers(0, max_entry)] * r).filter(any)
    gens = draw(st.lists(vec, min_size=1, max_size=max_gens, unique=True))
    return AffineMonoid(r, tuple(gens))


@st.composite
def monoids_with_members(draw):
    r = draw(st.integers(1, 3))
    vec = st.tuples(*[st.integers(-2, 3)] * r).filter(any)
    gens = draw(st.lists(vec, min_size=1, max_size=4, unique=True))
    M = AffineMonoid(r, tuple(gens))
    coeffs = st.lists(st.integers(0, 3), min_size=len(gens), max_size=len(gens))

    def combo(c):
        return tuple(sum(ci * g[k] for ci, g in zip(c, gens)) for k in range(r))
    return M, combo(draw(coeffs)), combo(draw(coeffs))


@given(monoids_with_members())
def test_membership_closed_under_addition(data):
    M, a, b = data
    assert membership(M, a).is_member and membership(M, b).is_member
    s = tuple(x + y for x, y in zip(a, b))
    v = membership(M, s)
    assert v.is_member
    w = v.witness
    assert tuple(sum(c * g[k] for c, g in zip(w, M.generators)) for k in range(M.ambient_rank)) == s


@given(st.integers(1, 4).flatmap(lambda rows: st.integers(1, 4).flatmap(
    lambda cols: st.lists(st.lists(st.integers(-9, 9), min_size=cols, max_size=cols),
                          min_size=rows, max_size=rows))))
def test_snf_identity(A):
    U, D, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert diag[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


EX4 = AffineMonoid(4, ((1, 0, 0, 0), (0, 1, 0, 0), (1, 0, 0, 1), (0, 2, 0, 1), (0, 0, 1, 1)))
EX4_HINTS = json.loads((Path(__file__).resolve().parent.parent / "demos" / "data"
                        / "example4.json").read_text())["hints"]


@lru_cache(maxsize=None)
def certificates():
    return (
        certify_Mn(EX4, hints=EX4_HINTS, panel_size=3),
        segre_certificate(segre_monoid(2, 3), panel_size=3),
        segre_certificate(segre_monoid(2, 5), panel_size=3),
        free_certificate(AffineMonoid.free(4), 4),
        certify_Mn(AffineMonoid(2, ((1, 0), (1, 1))), panel_size=3),
    )


@given(st.integers(0, 4), st.integers(1, 5), st.integers(0, 10_000))
def test_certificate_downgrade_valid(which, k, seed):
    cert = certificates()[which]
    k = min(k, cert.level)
    low = downgrade(cert, k)
    assert low.level == k and low.monoid == cert.monoid
    rep = verify_certificate(low, panel_size=2, max_degree=3, seed=seed)
    assert rep.ok, rep.failures()


@given(pointed_monoids())
def test_normal_implies_seminormal(M):
    if is_normal(M):
        assert is_seminormal(M)
    assert is_seminormal(normalization(M))


@given(pointed_monoids(max_entry=3, max_gens=3))
def test_seminormalization_idempotent_and_sandwiched(M):
    S = seminormalization(M)
    N = normalization(M)
    assert all(membership(S, g).is_member for g in M.generators)
    assert all(membership(N, g).is_member for g in S.generators)
    assert is_seminormal(S)
    assert same_monoid(seminormalization(S), S)
    assert same_monoid(normalization(N), N)


@st.composite
def polys(draw, rank, ring):
    exps = st.tuples(*[st.integers(0, 3)] * rank)
    coef = st.integers(-4, 4).filter(bool)
    if ring is QQ:
        coef = st.fractions(-4, 4, max_denominator=3).filter(bool)
    terms = draw(st.dictionaries(exps, coef, min_size=1, max_size=5))
    return Poly(terms, rank, ring)


@given(st.integers(1, 3).flatmap(lambda r: st.sampled_from([ZZ, QQ]).flatmap(
    lambda R: st.tuples(polys(r, R), polys(r, R)))))
def test_lex_leading_data_multiplicative(fg):
    f, g = fg
    Hf, Lf = leading_data(f)
    Hg, Lg = leading_data(g)
    H, L = leading_data(f * g)
    assert H == tuple(a + b for a, b in zip(Hf, Hg)) and L == Lf * Lg
    if is_quasi_monic(f) and is_quasi_monic(g):
        assert is_quasi_monic(f * g)
