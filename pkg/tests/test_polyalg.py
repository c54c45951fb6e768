import pytest

from affmon.monoid import AffineMonoid
from affmon.polyalg import (QQ, Poly, graded_component, hat_monoid, is_monic_in, is_quasi_monic,
                            leading_data, monic_form, parse_poly, poly_mul)
from affmon.segre import segre_monoid


def P(text, rank=None):
    return parse_poly(text, rank)


def test_parse_and_print_round_trip():
    for text in ["3*x1^2*x2 + -1*x4", "x1 - x2", "-x3^2 + 5", "2/3*x1", "x1^-2*x2"]:
        f = parse_poly(text, 4, ring=QQ)
        assert parse_poly(str(f), 4, ring=QQ) == f
    assert P("x1 - x1") == Poly({}, 1)
    with pytest.raises(ValueError):
        P("x0")
    with pytest.raises(ValueError):
        P("x1 + y2")


def test_mul_examples():
    g = P("x1 + 3*x2^2", 2)
    assert poly_mul(Poly.constant(1, 2), g) == g
    assert P("x1 + x2") ** 2 == P("x1^2 + 2*x1*x2 + x2^2")
    with pytest.raises(ValueError):
        P("x1", 1) * P("x2", 2)


def test_leading_data():
    assert leading_data(P("x1 + x2")) == ((0, 1), 1)
    assert leading_data(P("3*x1^2*x2 + x1*x2^2")) == ((1, 2), 1)
    assert leading_data(Poly.constant(5, 2)) == ((0, 0), 5)
    with pytest.raises(ValueError):
        leading_data(Poly({}, 2))


def test_quasi_monic():
    assert not is_quasi_monic(P("x1 + 2*x2^2"))
    assert is_quasi_monic(P("2*x1 + x2^2"))
    assert is_quasi_monic(P("-x1^3 + 7"))
    assert is_quasi_monic(parse_poly("2*x1 + 3*x2", ring=QQ))


def test_monic_in():
    assert is_monic_in(P("x1^2 + x2"), (1, 0), AffineMonoid(2, ((0, 1),)))
    assert not is_monic_in(P("x2*x1^2 + 1"), (1, 0), AffineMonoid(2, ((0, 1),)))
    assert is_monic_in(P("-x1^3 + 2*x1*x2 + 4"), (1, 0), AffineMonoid(2, ((0, 1),)))
    # monic in the monomial x1*x3 over Z+[x2, x2*x3]
    coeff = AffineMonoid(3, ((0, 1, 0), (0, 1, 1)))
    f = P("x1^2*x3^2 + x1*x2*x3^2 + x2", 3)
    assert is_monic_in(f, (1, 0, 1), coeff)
    assert monic_form(f, (1, 0, 1), coeff)[2] == Poly.constant(1, 3)
    assert not is_monic_in(P("x2", 2), (1, 0), AffineMonoid(2, ((0, 1),)))


def test_substitution():
    f = P("x2^2", 2)
    images = [P("x1", 2), P("x2 + x1", 2)]
    assert f.substitute(images) == P("x2^2 + 2*x1*x2 + x1^2")
    g = parse_poly("x1^-1*x2", 2)
    assert g.substitute([P("x1", 2), P("x2", 2)]) == g


def test_graded_components():
    assert graded_component(AffineMonoid.free(2), 0, 0).generators == ((0, 1),)
    S = segre_monoid(2, 2).monoid
    assert set(graded_component(S, 0, 0).generators) == {(0, 1, 0), (0, 1, 1)}
    M = AffineMonoid(4, ((1, 0, 0, 0), (0, 1, 0, 0), (1, 0, 0, 1), (0, 2, 0, 1), (0, 0, 1, 1)))
    hat = hat_monoid(M, 0)
    assert set(hat.generators) == {(0, 1, 0, 0), (0, 0, 1, 1), (0, 2, 0, 1)}
    piece = graded_component(M, 0, 1, degree_bound=4)
    assert all(x[0] == 1 for x in piece.members)
    assert (1, 0, 0, 1) in piece.members and (1, 1, 0, 0) in piece.members
    with pytest.raises(ValueError):
        piece.monoid(4)
