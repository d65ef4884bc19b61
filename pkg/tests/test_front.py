import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chekanov.front import (
    KNOTS,
    FrontError,
    NotAKnot,
    PlatBraid,
    build_front,
    classical_invariants,
    count_components,
    get_knot,
    load_knot_file,
    parse_plat_word,
)

M10_161_TEXT = "4, 5, 2, 3, 4, 5, 6, 7, 8, 9, 1, 1, 4, 5, 6, 7, 8, 9, 2, 3, 4, 5, 6, 7, 5, 6, 7, 3, 4, 4, 1, 2, 6, 7, 8"


def test_parse_m10_161_word():
    b = parse_plat_word(M10_161_TEXT, 10)
    assert b.strands == 10
    assert len(b.word) == 35
    assert b == KNOTS["m10_161"].braid()


def test_parse_empty_word_is_unknot():
    b = parse_plat_word("", 2)
    assert b.word == ()
    assert build_front(b).n_generators == 1


@pytest.mark.parametrize("text,strands", [("4 5", 4), ("1, x", 4), ("1 2", 5), ("0", 4)])
def test_parse_errors(text, strands):
    with pytest.raises(FrontError):
        parse_plat_word(text, strands)


def test_default_strand_count_rounds_up_to_even():
    assert parse_plat_word("1 2").strands == 4
    assert parse_plat_word("1 2 3").strands == 4
    assert parse_plat_word("").strands == 2


def test_generator_labels():
    f = get_knot("m10_161").front()
    assert f.n_generators == 40
    assert [c.label for c in f.crossings] == list(range(1, 36))
    assert [c.label for c in f.right_cusps] == [36, 37, 38, 39, 40]
    assert f.labels[40] == "x_40"
    assert get_knot("m10_139").front().n_generators == 45


def test_unknot_invariants():
    inv = classical_invariants(get_knot("unknot").front())
    assert (inv.tb, inv.r) == (-1, 0)


def _trace_oracle(strands, word):
    """Walk the closed curve position by position, column by column."""
    ncol = len(word)
    passes = {c: [] for c in range(ncol)}
    down = up = 0
    pos, direction = 2, 1  # leave the top left cusp on its lower branch
    down += 1
    start = (pos, direction)
    while True:
        cols = range(ncol) if direction == 1 else range(ncol - 1, -1, -1)
        for c in cols:
            k = word[c]
            if pos in (k, k + 1):
                passes[c].append(direction)
                pos = k + 1 if pos == k else k
        partner = pos + 1 if pos % 2 else pos - 1
        if partner > pos:
            down += 1
        else:
            up += 1
        pos, direction = partner, -direction
        if (pos, direction) == start:
            break
    # the first left cusp was counted at the start and again on return
    down -= 1
    writhe = sum(1 if p[0] == p[1] else -1 for p in passes.values())
    return writhe - strands // 2, (down - up) // 2


@pytest.mark.parametrize("name", ["m10_161", "m10_139", "unknot"])
def test_invariants_match_trace_oracle(name):
    k = get_knot(name)
    inv = classical_invariants(k.front())
    assert (inv.tb, inv.r) == _trace_oracle(k.strands, k.word)


def test_known_invariant_values():
    assert classical_invariants(get_knot("m10_161").front()).tb == 4
    assert classical_invariants(get_knot("m10_161").front()).r == -1
    inv = classical_invariants(get_knot("m10_139").front())
    assert (inv.tb, inv.r) == (-17, 4)


def test_link_rejected():
    f = build_front(PlatBraid(4, ()))
    assert count_components(f) == 2
    with pytest.raises(NotAKnot):
        classical_invariants(f)


@st.composite
def braids(draw):
    strands = draw(st.sampled_from([2, 4, 6, 8]))
    word = draw(st.lists(st.integers(1, strands - 1), max_size=12))
    return PlatBraid(strands, tuple(word))


@settings(max_examples=200, deadline=None)
@given(braids())
def test_generator_count_identity(b):
    assert build_front(b).n_generators == len(b.word) + b.strands // 2


@settings(max_examples=200, deadline=None)
@given(braids())
def test_serialize_round_trip(b):
    assert parse_plat_word(b.serialize(), b.strands) == b


@settings(max_examples=200, deadline=None)
@given(braids())
def test_knot_iff_single_cycle(b):
    f = build_front(b)
    # permutation of strand ids: right cusp partner, then left cusp partner
    right = {}
    for c in f.right_cusps:
        right[c.upper], right[c.lower] = c.lower, c.upper
    s, n = 1, 0
    while True:
        s = right[s]
        s = s + 1 if s % 2 else s - 1
        n += 1
        if s == 1:
            break
    assert (n == b.strands // 2) == (count_components(f) == 1)
    if count_components(f) == 1:
        assert _trace_oracle(b.strands, b.word) == (
            lambda inv: (inv.tb, inv.r))(classical_invariants(f))


def test_knot_file_round_trip(tmp_path):
    rec = get_knot("m10_139")
    path = tmp_path / "k.json"
    path.write_text(rec.to_json())
    assert load_knot_file(path) == rec


def test_knot_file_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FrontError):
        load_knot_file(bad)
    bad.write_text(json.dumps({"name": "x", "strands": 4, "word": [1, 5]}))
    with pytest.raises(FrontError):
        load_knot_file(bad)
    with pytest.raises(FrontError):
        get_knot("no_such_knot")
