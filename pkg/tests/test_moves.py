import pytest

from oracles import face_cycles
from planaria.codec import canonical_key, is_isomorphic, realize
from planaria.core import BLACK, GRAY, CurveDiagram, genus, validate
from planaria.moves import (ALL_KINDS, DELTA, R1A, R1B, R2A, R2B, R3, MoveInstance, StaleMove, apply,
                            apply_traced, enumerate_moves, format_move, inverse, is_applicable, parse_kinds,
                            parse_move, support)


def _count(d, kind):
    return sum(1 for m in enumerate_moves(d, [kind]))


def test_circle_moves():
    c = CurveDiagram()
    ms = enumerate_moves(c, ALL_KINDS)
    assert {m.kind for m in ms} == {R1B, R2B}
    assert _count(c, R1B) == 2


def test_kink_monogons_match_face_oracle(kink):
    ones = sum(1 for cyc in face_cycles(kink.alpha) if len(cyc) == 1)
    assert _count(kink, R1A) == ones == 2
    # both monogons give the same circle
    assert len({canonical_key(apply(kink, m)) for m in enumerate_moves(kink, [R1A])}) == 1


def test_trefoil_has_two_r3(trefoil):
    assert _count(trefoil, R3) == 2


def test_r1b_count_is_twice_edges(corpus):
    for d in corpus:
        if not d.is_bare:
            assert _count(d, R1B) == 2 * (2 * d.n)


def test_r1a_count_matches_monogons(corpus):
    for d in corpus:
        if not d.is_bare:
            assert _count(d, R1A) == sum(1 for c in face_cycles(d.alpha) if len(c) == 1)


def test_apply_examples(kink):
    assert apply(kink, enumerate_moves(kink, [R1A])[0]).is_bare
    for m in enumerate_moves(CurveDiagram(), [R1B]):
        assert is_isomorphic(apply(CurveDiagram(), m), kink, include_mirror=True)
    finger = realize([1, 2, 2, 1])
    twos = [m for m in enumerate_moves(finger, [R2A])]
    results = [apply(finger, m) for m in twos]
    assert any(r.is_bare for r in results)


def test_crossing_deltas_and_genus(corpus, fx):
    diagrams = list(corpus) + [fx["torus.right"]]
    for d in diagrams:
        for m in enumerate_moves(d, ALL_KINDS):
            e = apply(d, m)
            assert e.n - d.n == DELTA[m.kind]
            assert genus(e) == genus(d)
            assert validate(e) is None


def test_apply_inverse_is_identity(corpus):
    for d in corpus:
        for m in enumerate_moves(d, ALL_KINDS):
            e = apply(d, m)
            back = inverse(m, d, e)
            assert is_applicable(e, back)
            assert canonical_key(apply(e, back)) == canonical_key(d)


def test_inverse_kinds(kink):
    c = CurveDiagram()
    m = enumerate_moves(c, [R1B])[0]
    assert inverse(m, c, apply(c, m)).kind == R1A
    m = enumerate_moves(c, [R2B])[0]
    assert inverse(m, c, apply(c, m)).kind == R2A


def test_created_crossings_are_gray_and_others_keep_color():
    d = realize([1, 2, 3, 1, 2, 3])
    for m in enumerate_moves(d, [R1B, R2B]):
        e, trace = apply_traced(d, m)
        for c in trace.created:
            assert e.colors[c] == GRAY
        for c in range(d.n):
            if trace.crossing_map[c] is not None:
                assert e.colors[trace.crossing_map[c]] == BLACK


def test_r3_keeps_face_count(corpus):
    for d in corpus:
        for m in enumerate_moves(d, [R3]):
            assert len(face_cycles(apply(d, m).alpha)) == len(face_cycles(d.alpha))


def test_stale_move(kink):
    with pytest.raises(StaleMove):
        apply(CurveDiagram(), MoveInstance(R1A, (0,)))
    assert not is_applicable(kink, MoveInstance(R3, (0,)))


def test_text_round_trip(corpus):
    for d in corpus:
        for m in enumerate_moves(d, ALL_KINDS):
            text = format_move(d, m)
            back = parse_move(d, text)
            assert canonical_key(apply(d, back)) == canonical_key(apply(d, m))


def test_text_forms(kink):
    texts = {format_move(kink, m).split(":")[0] for m in enumerate_moves(kink, ALL_KINDS)}
    assert texts == {"1a", "1b", "2b"}
    assert format_move(CurveDiagram(), MoveInstance(R1B, (0, "L"))) == "1b:d0:L"


def test_parse_kinds():
    assert parse_kinds("1a,1b,3") == (R1A, R1B, R3)
    assert parse_kinds("R2a") == (R2A,)
    with pytest.raises(ValueError):
        parse_kinds("4")


def test_support_is_local(trefoil):
    for m in enumerate_moves(trefoil, ALL_KINDS):
        assert support(trefoil, m) <= set(range(trefoil.n))


def test_untouched_crossings_keep_their_neighbours(corpus):
    # a move only rewires edges at its own crossings
    for d in corpus:
        if d.is_bare:
            continue
        for m in enumerate_moves(d, ALL_KINDS):
            e, trace = apply_traced(d, m)
            sup = support(d, m)
            for x in range(len(d.alpha)):
                y = d.alpha[x]
                if x >> 2 in sup or y >> 2 in sup:
                    continue
                if x in trace.dart_map and y in trace.dart_map:
                    assert e.alpha[trace.dart_map[x]] == trace.dart_map[y]
