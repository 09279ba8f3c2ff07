import random

import pytest

from oracles import face_cycles, map_isomorphic
from planaria.codec import canonical_key, is_isomorphic, realize, renumber
from planaria.core import GRAY, CurveDiagram, genus, validate
from planaria.fixtures import expanded_trefoil_word, sequence
from planaria.moves import ONE_THREE, R1A, R2A, _triangle, apply_traced, enumerate_moves
from planaria.search import SearchConfig, explore, inverse_sequence, replay
from planaria.transforms import (DOUBLE_BIGON, SINGLE_CROSSING, LocalTangle, TransportError,
                                 expand_double_bigon, guarded_moves, rotated, substitute,
                                 transport_sequence)


def test_single_crossing_substitution_is_identity(corpus):
    for d in corpus:
        for c in range(d.n):
            assert canonical_key(substitute(d, c, SINGLE_CROSSING)) == canonical_key(d)


def test_tangle_shape_is_checked():
    with pytest.raises(ValueError):
        LocalTangle(1, {}, (0, 1, 2))
    with pytest.raises(ValueError):
        LocalTangle(1, {0: 1, 1: 0}, (0, 1, 2, 3))


def test_four_turns_give_back_the_tangle():
    assert rotated(DOUBLE_BIGON, 4) == DOUBLE_BIGON
    assert rotated(DOUBLE_BIGON, 1) != DOUBLE_BIGON


def test_expansion_adds_two_bigons_per_crossing(corpus):
    for d in corpus:
        if d.is_bare or d.n > 4:
            continue
        for c in range(d.n):
            e = expand_double_bigon(d, [c])
            assert validate(e) is None and genus(e) == 0
            assert e.n == d.n + 2
            sizes = sorted(len(f) for f in face_cycles(e.alpha))
            assert sizes.count(2) >= 2


def test_expanded_kink_is_the_trefoil_shadow(kink, trefoil):
    # a twist of three closed up by one arc
    assert is_isomorphic(expand_double_bigon(kink), trefoil, include_mirror=True)


def test_expanded_trefoil_matches_independent_word(fx):
    got = expand_double_bigon(fx["small.seed"], "all")
    assert got.n == 9
    assert map_isomorphic(got, realize(expanded_trefoil_word())) or \
        is_isomorphic(got, realize(expanded_trefoil_word()), include_mirror=True)
    assert canonical_key(got) == canonical_key(fx["fig4.expanded"])


def test_expansion_ignores_labels(corpus):
    rng = random.Random(5)
    for d in corpus:
        if d.is_bare or d.n > 4:
            continue
        perm = list(range(d.n))
        rng.shuffle(perm)
        e = renumber(d, perm, [rng.randrange(4) for _ in range(d.n)])
        assert canonical_key(expand_double_bigon(d)) == canonical_key(expand_double_bigon(e))


def test_expansion_of_bare_curve():
    assert expand_double_bigon(CurveDiagram()).is_bare
    with pytest.raises(ValueError):
        expand_double_bigon(CurveDiagram(), [0])


def test_guarded_moves_avoid_guards(corpus):
    for d in corpus:
        if d.n < 2:
            continue
        guards = {0}
        for m in guarded_moves(d, guards):
            assert m.kind in ONE_THREE
            if m.kind == "3":
                assert all(t >> 2 != 0 for t in _triangle(d, m.anchor[0]))
            else:
                assert m.anchor[0] >> 2 != 0


def test_kink_sequence_transports(kink):
    seq = enumerate_moves(kink, [R1A])[:1]
    out = transport_sequence(seq, kink, [0])
    assert {m.kind for m in out} <= set(ONE_THREE)
    assert replay(expand_double_bigon(kink), out).is_bare


def test_trefoil_sequence_transports(fx):
    left = fx["small.seed"]
    res = explore(left, SearchConfig(kinds=ONE_THREE, max_crossings=4))
    assert res.simplified
    out = transport_sequence(res.sequence, left, range(left.n), fx["fig4.expanded"])
    assert {m.kind for m in out} <= set(ONE_THREE)
    assert replay(fx["fig4.expanded"], out).is_bare


def test_transport_rejects_other_kinds():
    finger = realize([1, 2, 2, 1])
    seq = [m for m in enumerate_moves(finger, [R2A]) if apply_traced(finger, m)[0].is_bare][:1]
    with pytest.raises(TransportError, match="step 0"):
        transport_sequence(seq, finger, [0])


def test_transport_rejects_wrong_right_side(kink, fx):
    with pytest.raises(TransportError):
        transport_sequence([], kink, [0], fx["fig4.expanded"])


def _guards(d):
    return {c for c in range(d.n) if d.colors[c] == GRAY}


@pytest.mark.parametrize("name", ["lemma6", "theorem3.sub1a", "theorem3.sub3"])
def test_stored_sequences_reach_their_goals(name):
    start, seq, goal = sequence(name)
    assert {m.kind for m in seq} <= set(ONE_THREE)
    end = replay(start, seq)
    assert canonical_key(end, colors=True) == canonical_key(goal, colors=True)


@pytest.mark.parametrize("name", ["lemma6", "theorem3.sub1a", "theorem3.sub3"])
def test_stored_sequences_leave_guards_alone(name):
    start, seq, _ = sequence(name)
    d = start
    guards = _guards(d)
    assert guards
    for m in seq:
        assert m in guarded_moves(d, guards)
        d, trace = apply_traced(d, m)
        guards = {trace.crossing_map[g] for g in guards}
        assert None not in guards


def test_lemma6_runs_backwards():
    left, seq, right = sequence("lemma6")
    back = inverse_sequence(left, seq)
    assert {m.kind for m in back} <= set(ONE_THREE)
    # the inverse is numbered against the replayed end, which is the right picture
    there = replay(left, seq)
    assert canonical_key(there, colors=True) == canonical_key(right, colors=True)
    end = replay(there, back)
    assert canonical_key(end, colors=True) == canonical_key(left, colors=True)


def test_lemma6_pictures_differ():
    left, _, right = sequence("lemma6")
    assert left.n == right.n == 5
    assert not is_isomorphic(left, right, include_mirror=True)
