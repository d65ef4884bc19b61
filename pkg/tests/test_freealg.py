import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chekanov.freealg import (
    LAURENT,
    Z2,
    Derivation,
    Laurent,
    NCPoly,
    ParseError,
    RingMismatch,
    leibniz_extend,
    nc_add,
    nc_mul,
    nc_substitute,
    parse_poly,
)
from chekanov.reference import reference_dga

NAMES = {"a": 1, "b": 2, "e": 5, "f": 6, "g": 7, "h": 8}


def P(text, ring=Z2):
    return parse_poly(text, ring, NAMES)


def test_add_characteristic_two():
    assert nc_add(P("x_1"), P("x_1")) == NCPoly.zero(Z2)


def test_add_laurent_cancels_t_power():
    p = P("x_18 x_9 + t^-1", LAURENT)
    assert nc_add(p, P("-t^-1", LAURENT)) == P("x_18 x_9", LAURENT)


def test_add_disjoint_supports():
    assert nc_add(P("x_2 x_13 + 1"), P("x_12 x_11")) == P("x_2 x_13 + x_12 x_11 + 1")


def test_mul_concatenates():
    assert nc_mul(P("x_12"), P("x_11 x_2")) == P("x_12 x_11 x_2")


def test_mul_noncommutative_square():
    sq = nc_mul(P("a + b"), P("a + b"))
    assert set(sq.terms) == {(1, 1), (1, 2), (2, 1), (2, 2)}


def test_mul_laurent_exponents():
    assert nc_mul(P("t^-1", LAURENT), P("t x_9", LAURENT)) == P("x_9", LAURENT)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        nc_add(P("x_1"), P("x_1", LAURENT))
    with pytest.raises(RingMismatch):
        nc_mul(P("x_1"), P("x_1", LAURENT))


def test_substitute_relation():
    assign = {12: P("a"), 11: P("f"), 2: P("e"), 13: P("b")}
    got = nc_substitute(P("x_2 x_13 + x_12 x_11 + 1"), assign)
    assert got == P("e b + a f + 1")


def test_substitute_identity_and_zero():
    p = P("x_3 x_1 + x_2 + 1")
    assert nc_substitute(p, {g: NCPoly.gen(Z2, g) for g in (1, 2, 3)}) == p
    assert nc_substitute(P("g h + 1"), {7: NCPoly.zero(Z2), 8: P("h")}) == NCPoly.one(Z2)


def test_substitute_missing_assignment():
    with pytest.raises(KeyError):
        nc_substitute(P("x_1 x_2"), {1: P("x_1")})


def test_derivation_of_unit_is_zero():
    D = reference_dga("m10_161").derivation()
    assert D(NCPoly.one(Z2)) == NCPoly.zero(Z2)


def test_derivation_on_generator():
    D = reference_dga("m10_161").derivation()
    assert D(P("x_5")) == P("x_3 x_2 + x_4")


def test_signed_derivation_single_factor():
    D = reference_dga("m10_139").derivation()
    assert D(P("x_2 x_11", LAURENT)) == P("-x_1 x_11", LAURENT)


def test_signed_mode_needs_gradings():
    with pytest.raises(ValueError):
        leibniz_extend({1: P("1", LAURENT)}, None, LAURENT)
    with pytest.raises(ValueError):
        Derivation(LAURENT, {1: P("1", LAURENT), 2: P("x_1", LAURENT)}, {1: 1})


def test_laurent_arithmetic_is_exact():
    big = Laurent({0: 10 ** 40})
    assert (big * big).items() == ((0, 10 ** 80),)
    assert Laurent({3: 2, -1: -1}).at_one() == 1


def test_parse_forms():
    assert P("x_{12}x_3") == P("x12 x_3") == P("x_12 * x_3")
    assert P("(x_1 + 1)^2") == P("x_1 x_1 + 1")
    with pytest.raises(ParseError):
        P("x_1 +")
    with pytest.raises(ParseError):
        P("(x_1")


def test_render_round_trip_on_tables():
    for name in ("m10_161", "m10_139"):
        dga = reference_dga(name)
        for p in dga.diff.values():
            assert parse_poly(p.render(), dga.ring) == p


# ---- property tests --------------------------------------------------

words = st.lists(st.integers(1, 3), max_size=3).map(tuple)


@st.composite
def z2_polys(draw):
    return NCPoly.from_words(Z2, draw(st.lists(words, max_size=4)))


@st.composite
def laurent_polys(draw):
    items = draw(st.lists(st.tuples(words, st.integers(-2, 2), st.integers(-3, 3)), max_size=4))
    return NCPoly(LAURENT, [(w, Laurent.monomial(e, c)) for w, e, c in items])


polys = st.one_of(z2_polys(), laurent_polys())


@settings(max_examples=150, deadline=None)
@given(z2_polys(), z2_polys(), z2_polys())
def test_ring_axioms_z2(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r


@settings(max_examples=150, deadline=None)
@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_axioms_laurent(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == NCPoly.zero(LAURENT)


@settings(max_examples=100, deadline=None)
@given(z2_polys(), z2_polys(), z2_polys(), z2_polys(), z2_polys())
def test_substitute_is_homomorphism(p, q, s1, s2, s3):
    sub = {1: s1, 2: s2, 3: s3}
    assert nc_substitute(p * q, sub) == nc_substitute(p, sub) * nc_substitute(q, sub)
    assert nc_substitute(p + q, sub) == nc_substitute(p, sub) + nc_substitute(q, sub)


@settings(max_examples=100, deadline=None)
@given(polys)
def test_normalization_idempotent(p):
    assert p.normalized() == p
    assert p.normalized().normalized() == p.normalized()


@st.composite
def homogeneous_pair(draw):
    dga = reference_dga("m10_139")
    gens = dga.generators
    w1 = tuple(draw(st.lists(st.sampled_from(gens), min_size=1, max_size=3)))
    w2 = tuple(draw(st.lists(st.sampled_from(gens), min_size=0, max_size=3)))
    return dga, w1, w2


@settings(max_examples=150, deadline=None)
@given(homogeneous_pair())
def test_graded_leibniz_rule(data):
    dga, w1, w2 = data
    D = dga.derivation()
    p, q = NCPoly.from_words(LAURENT, [w1]), NCPoly.from_words(LAURENT, [w2])
    sign = -1 if dga.degree(w1) % 2 else 1
    assert D(p * q) == D(p) * q + (p * D(q)).scale(sign)
