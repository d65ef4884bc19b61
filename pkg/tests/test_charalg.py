import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chekanov.charalg import (
    EQUIVALENT,
    TRIVIAL,
    UNKNOWN,
    UnitWitness,
    cancel_pairs,
    derive_zero_generators,
    ideal_equiv_bounded,
    search_unit_witness,
    simplify_presentation,
    verify_unit_witness,
)
from chekanov.dga import GradedDGA, compute_differential
from chekanov.freealg import LAURENT, Z2, NCPoly, parse_poly
from chekanov.front import get_knot
from chekanov.reference import (
    M10_139_WITNESS,
    M10_161_EXTRA_IDEAL,
    M10_161_QUOTIENT_RELATIONS,
    four_generator_sets,
    parse_relation,
    reference_dga,
)
from chekanov.rewriting import (
    complete_bounded,
    expand_prov,
    reduce_normal_form,
    reduce_random_order,
    rules_from_relations,
    to_words,
)


def P(text, ring=Z2):
    return parse_poly(text, ring, {"a": 1, "b": 2, "c": 3, "d": 4})


def dga_of(diff, gradings=None):
    diff = {g: P(t) for g, t in diff.items()}
    return GradedDGA(Z2, diff, gradings or {g: 1 for g in diff})


def quotient_rules():
    zeros = [NCPoly.gen(Z2, g) for g in sorted(derive_zero_generators(reference_dga("m10_161")))]
    return rules_from_relations(zeros + [P(s) for s in M10_161_EXTRA_IDEAL])


# ---- reduction and completion ----------------------------------------


def test_reduce_x20_to_first_relation():
    d = reference_dga("m10_161").diff
    assert reduce_normal_form(d[20], quotient_rules()) == P("x_2 x_13 + x_12 x_11 + 1")


def test_reduce_x36():
    d = reference_dga("m10_161").diff
    assert reduce_normal_form(d[36], quotient_rules()) == P("x_13 x_2 + 1")


def test_two_sided_subword_reduction():
    sys = rules_from_relations([P("x_11 x_2")])
    assert reduce_normal_form(P("x_12 x_11 x_2 x_13"), sys) == NCPoly.zero(Z2)


def test_complete_single_generator():
    sys = complete_bounded([P("x_1")])
    assert [(r.lhs, set(r.rhs)) for r in sys.rules] == [((1,), set())]
    assert sys.complete


def test_ab_does_not_give_ba():
    for cap in (4, 8, 12):
        sys = complete_bounded([P("a b + 1")], cap=cap)
        assert sys.complete
        assert not sys.reduces_to_zero(P("b a + 1"))


def test_unit_collapses_system():
    sys = complete_bounded([P("a b + 1"), P("a b")])
    assert sys.trivial
    assert sys.reduces_to_zero(P("c d a"))


def test_provenance_expands_to_difference():
    six, _ = four_generator_sets()
    rels = [to_words(p) for p in six]
    sys = complete_bounded(rels, cap=6, track=True)
    rng = random.Random(3)
    for _ in range(40):
        p = {tuple(rng.choice((1, 2, 3, 4)) for _ in range(rng.randint(0, 4))) for _ in range(4)}
        nf, prov = sys.reduce(p, track=True)
        assert expand_prov(prov, rels) == p ^ nf
    for r in sys.rules:
        assert expand_prov(r.prov, rels) == r.poly()


small_polys = st.lists(st.lists(st.integers(1, 4), max_size=5).map(tuple), max_size=5).map(
    lambda ws: NCPoly.from_words(Z2, ws))


@settings(max_examples=100, deadline=None)
@given(small_polys)
def test_normal_form_idempotent(p):
    sys = complete_bounded(four_generator_sets()[0], cap=6)
    nf = reduce_normal_form(p, sys)
    assert reduce_normal_form(nf, sys) == nf


@settings(max_examples=100, deadline=None)
@given(small_polys, st.integers(0, 10 ** 6))
def test_confluence_at_cap(p, seed):
    sys = complete_bounded(four_generator_sets()[0], cap=6)
    assert sys.complete
    assert reduce_random_order(p, sys, random.Random(seed)) == sys.reduce(p)


# ---- zeros and presentations -------------------------------------------


def test_forced_zeros_m10_161():
    assert derive_zero_generators(reference_dga("m10_161")) == {1, 3, 4, 7, 9, 14, 16, 25}


def test_forced_zeros_small():
    assert derive_zero_generators(dga_of({1: "0", 2: "0"})) == set()
    assert derive_zero_generators(dga_of({1: "0", 2: "x_1", 3: "x_1 x_2"})) == {1}


def test_quotient_presentation():
    pres = simplify_presentation(reference_dga("m10_161"), [P(s) for s in M10_161_EXTRA_IDEAL])
    assert pres.generators == [2, 11, 12, 13, 27, 29]
    published = {frozenset(parse_relation(r).terms) for r in M10_161_QUOTIENT_RELATIONS}
    # every reduced relation is one of the published lines; the one left out
    # (x_27 x_2 = 1) is an element of the extra ideal itself
    got = {frozenset(p.terms) for p in pres.relations}
    assert got <= published
    assert published - got == {frozenset(P("x_27 x_2 + 1").terms)}
    assert not pres.trivial
    assert "generators: x_2, x_11, x_12, x_13, x_27, x_29" in pres.render()


def test_unknot_presentation():
    pres = simplify_presentation(compute_differential(get_knot("unknot").front(), Z2))
    assert pres.generators == [1]
    assert pres.relations == []


def test_unit_presentation_is_trivial():
    assert simplify_presentation(dga_of({1: "1"})).trivial


def test_quotient_ideal_equivalence_both_directions():
    extra = [P(s) for s in M10_161_EXTRA_IDEAL]
    pres = simplify_presentation(reference_dga("m10_161"), extra)
    nonlinear = [p for p in extra if len(p.leading_word()) > 1]
    published = [parse_relation(r) for r in M10_161_QUOTIENT_RELATIONS]
    assert ideal_equiv_bounded(pres.relations + nonlinear, published, cap=8).verdict == EQUIVALENT
    assert ideal_equiv_bounded(published, pres.relations + nonlinear, cap=8).verdict == EQUIVALENT


def test_four_generator_sets_equivalent():
    six, four = four_generator_sets()
    assert ideal_equiv_bounded(six, four, cap=6).verdict == EQUIVALENT
    assert ideal_equiv_bounded(four, six, cap=6).verdict == EQUIVALENT


def test_ideal_equiv_small():
    assert ideal_equiv_bounded([P("a")], [P("a"), P("a b")]).equivalent
    v = ideal_equiv_bounded([P("a b + 1")], [P("b a + 1")], cap=8)
    assert v.verdict == UNKNOWN
    assert not v.a_in_b and not v.b_in_a


# ---- witnesses ----------------------------------------------------------


def test_published_witness_verifies():
    dga = reference_dga("m10_139")
    w = parse_poly(M10_139_WITNESS, LAURENT)
    assert verify_unit_witness(dga, UnitWitness(w))
    assert verify_unit_witness(dga.to_z2(), w)


def test_non_witnesses():
    dga = reference_dga("m10_161")
    assert not verify_unit_witness(dga, P("x_2"))
    assert not verify_unit_witness(dga, NCPoly.one(Z2))
    assert not verify_unit_witness(reference_dga("m10_139"), NCPoly.one(LAURENT))


def test_search_finds_verified_witness_m10_139():
    res = search_unit_witness(reference_dga("m10_139"), cap=12)
    assert res.verdict == TRIVIAL
    assert verify_unit_witness(reference_dga("m10_139").to_z2(), res.witness)


def test_search_m10_161_unknown():
    res = search_unit_witness(reference_dga("m10_161"), cap=12)
    assert res.verdict == UNKNOWN
    assert res.witness is None


def test_search_trivial_dga():
    res = search_unit_witness(dga_of({1: "1"}))
    assert res.verdict == TRIVIAL
    assert res.witness.element == P("x_1")


def test_search_needs_pullback():
    # d x_3 = x_1 + x_2 x_2 with d x_2 = 0 and d x_4 = 1 + x_1:
    # after cancelling (x_1, x_3) the witness x_4 must be corrected
    dga = dga_of({1: "0", 2: "0", 3: "x_1 + x_2 x_2", 4: "x_2 x_2 + 1 + x_1"})
    res = search_unit_witness(dga)
    assert res.verdict == TRIVIAL
    assert res.cancellations >= 1
    assert verify_unit_witness(dga, res.witness)


def test_cancellation_preserves_acyclic_dependencies():
    reduced, steps = cancel_pairs({g: set(p.terms) for g, p in reference_dga("m10_139").to_z2().diff.items()})
    assert len(steps) == 12
    gone = {s.a for s in steps} | {s.b for s in steps}
    assert not gone & set(reduced)
    assert all(not gone.intersection(w) for p in reduced.values() for w in p)
