import pytest
from hypothesis import given, strategies as st

from conftest import P
from mockalex.errors import PolyError
from mockalex.poly import (
    LaurentPoly,
    conway_z,
    decompose_symmetric,
    divide_exact,
    doteq,
    symmetrize,
    unit_normalize,
)


polys = st.dictionaries(
    st.tuples(st.integers(-4, 4)), st.integers(-6, 6), max_size=6
).map(lambda terms: LaurentPoly(("W",), terms))

units = st.tuples(st.sampled_from([1, -1]), st.integers(-5, 5)).map(
    lambda t: LaurentPoly(("x",), {(t[1],): t[0]})
)


def test_text_is_canonical():
    p = P("W^-2 - 1 + W^2")
    assert p.to_text() == "W^2 - 1 + W^-2"
    assert P("-W*B + 2").to_text() == "-W*B + 2"
    assert LaurentPoly.zero(("W",)).to_text() == "0"


def test_from_text_rejects_garbage():
    with pytest.raises(PolyError):
        P("W^")
    with pytest.raises(PolyError):
        P("W + + 1")
    with pytest.raises(PolyError):
        P("Q")


def test_zero_terms_are_dropped():
    p = P("W - W + 3")
    assert p == 3
    assert p.terms == {(0,): 3}


def test_conway_z_squared():
    z = conway_z()
    assert z * z == P("W^2 - 2 + W^-2")


def test_inverse_only_for_units():
    assert P("-W^3").inverse() == P("-W^-3")
    with pytest.raises(PolyError):
        P("W + 1").inverse()
    with pytest.raises(PolyError):
        P("2*W").inverse()


def test_negative_powers():
    assert P("W") ** -2 == P("W^-2")
    with pytest.raises(PolyError):
        P("1 + W") ** -1


def test_mixed_variables_need_constants():
    with pytest.raises(PolyError):
        P("W") + P("x")
    assert (P("W") + 1) * 2 == P("2*W + 2")


def test_substitute_specializes_b():
    p = P("W^2 - W*B + B^2")
    assert p.substitute({"B": LaurentPoly.var("W") ** -1}) == P("W^2 - 1 + W^-2")


def test_substitute_rejects_sums():
    with pytest.raises(PolyError):
        P("W").substitute({"W": P("W + 1")})


def test_rescale():
    assert P("x^2 - x + 1").rescale("x", "W", 2) == P("W^4 - W^2 + 1")


def test_unit_normalize():
    assert unit_normalize(P("-x^3 + x^4 - x^5")) == P("x^2 - x + 1")
    assert doteq(P("x - x^2 + x^3"), P("x^2 - x + 1"))
    assert not doteq(P("x^2 + 1"), P("x^2 - 1"))


def test_divide_exact():
    assert divide_exact(P("x^3 - 1"), P("x - 1")) == P("x^2 + x + 1")
    assert divide_exact(P("x^-1 + 1"), P("x")) == P("x^-2 + x^-1")
    with pytest.raises(PolyError):
        divide_exact(P("x^2 + 1"), P("x - 1"))
    with pytest.raises(PolyError):
        divide_exact(P("x"), LaurentPoly.zero(("x",)))


def test_closure_polynomial_decomposes():
    p = P("W^2 + 2*W - 2*W^-1 + W^-2")
    q = decompose_symmetric(p)
    assert q is not None
    assert symmetrize(q) == p


def test_non_closure_polynomial_has_no_witness():
    assert decompose_symmetric(P("2*W^2 + W - W^-1 + W^-2 - W^-3 - 1")) is None


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero


@given(polys)
def test_text_round_trip(p):
    assert LaurentPoly.from_text(p.to_text(), ("W",)) == p


@given(polys)
def test_reversal_substitution_is_an_involution(p):
    flip = -(LaurentPoly.var("W") ** -1)
    assert p.substitute({"W": flip}).substitute({"W": flip}) == p


@given(polys)
def test_symmetrized_polynomials_decompose(q):
    p = symmetrize(q)
    witness = decompose_symmetric(p)
    assert witness is not None
    assert symmetrize(witness) == p


@given(st.dictionaries(st.tuples(st.integers(-4, 4)), st.integers(-6, 6), min_size=1, max_size=5), units)
def test_doteq_ignores_units(terms, unit):
    p = LaurentPoly(("x",), terms)
    if p.is_zero:
        return
    assert doteq(p * unit, p)
    assert unit_normalize(unit_normalize(p)) == unit_normalize(p)
