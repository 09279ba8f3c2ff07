import pytest

from oracles import naive_classes
from planaria.codec import canonical_key, realize
from planaria.core import CurveDiagram
from planaria.moves import ALL_KINDS, ONE_THREE, R1A, R1B, R3, MoveInstance, StaleMove, apply, enumerate_moves
from planaria.search import (CAP_HIT, EXHAUSTED, SIMPLIFIED, SearchConfig, SearchError, explore,
                             inverse_sequence, naive_reachable, replay)


def test_kink_simplifies_in_one(kink):
    res = explore(kink, SearchConfig(kinds=(R1A,), max_crossings=3))
    assert res.status == SIMPLIFIED
    assert len(res.sequence) == 1
    assert replay(kink, res.sequence).is_bare


def test_two_kinks_simplify_in_two():
    d = realize([1, 1, 2, 2])
    res = explore(d, SearchConfig(kinds=(R1A,), max_crossings=4))
    assert res.simplified and len(res.sequence) == 2


def test_trefoil_needs_move_three(trefoil):
    assert explore(trefoil, SearchConfig(kinds=(R1A,), max_crossings=3)).status == EXHAUSTED
    res = explore(trefoil, SearchConfig(kinds=ONE_THREE, max_crossings=4))
    assert res.simplified
    assert replay(trefoil, res.sequence).is_bare


def test_fig3_stuck_under_one_three(fx):
    res = explore(fx["fig3.main"], SearchConfig(kinds=ONE_THREE, max_crossings=17, stop_at_simplified=False))
    assert res.status == EXHAUSTED
    assert res.min_crossings == 16
    assert res.visited == 11


def test_fig3_simplifies_with_all_moves(fx):
    d = fx["fig3.main"]
    res = explore(d, SearchConfig(kinds=ALL_KINDS, max_crossings=18, strategy="priority"))
    assert res.simplified
    end = replay(d, res.sequence)
    assert end.is_bare and end.bare_genus == 0


def test_start_above_cap_is_an_error(trefoil):
    with pytest.raises(SearchError):
        explore(trefoil, SearchConfig(max_crossings=2))
    with pytest.raises(SearchError):
        explore(trefoil, SearchConfig(max_crossings=5, max_states=0))


def test_state_cap_reported(fx):
    res = explore(fx["fig3.main"], SearchConfig(kinds=ONE_THREE, max_crossings=18, max_states=30))
    assert res.status == CAP_HIT
    assert res.cap == "max_states"


def test_visitor_sees_each_class_once(trefoil):
    seen = []
    res = explore(trefoil, SearchConfig(kinds=ONE_THREE, max_crossings=4, stop_at_simplified=False),
                  visitor=lambda d, depth: seen.append(canonical_key(d)))
    assert len(seen) == len(set(seen)) == res.visited


def test_min_crossings_is_realized(trefoil):
    ns = []
    res = explore(trefoil, SearchConfig(kinds=(R1A, R3), max_crossings=3, stop_at_simplified=False),
                  visitor=lambda d, depth: ns.append(d.n))
    assert res.min_crossings == min(ns)


def test_visited_matches_naive_oracle(corpus):
    # kinds {1a, 3} never add crossings, so the naive expansion is finite
    checked = 0
    for d in corpus:
        if d.is_bare or d.n > 5:
            continue
        res = explore(d, SearchConfig(kinds=(R1A, R3), max_crossings=d.n, stop_at_simplified=False))
        assert res.status in (EXHAUSTED, SIMPLIFIED)
        assert res.visited == len(naive_classes(d, (R1A, R3), d.n))
        checked += 1
    assert checked > 100


def test_naive_reachable_helper_agrees_at_depth(trefoil):
    ours = naive_reachable(trefoil, ONE_THREE, 4, 2)
    assert ours == naive_classes(trefoil, ONE_THREE, 4, 2)


def test_replay_examples(kink):
    c = CurveDiagram()
    m = MoveInstance(R1B, (0, "L"))
    k = apply(c, m)
    back = enumerate_moves(k, [R1A])[0]
    assert replay(c, [m, back]).is_bare
    assert replay(kink, [enumerate_moves(kink, [R1A])[0]]).is_bare


def test_replay_reports_stale_step(kink):
    with pytest.raises(StaleMove, match="step 1"):
        replay(kink, [enumerate_moves(kink, [R1A])[0], MoveInstance(R1A, (0,))])


def test_inverse_sequence_returns_to_start(trefoil):
    res = explore(trefoil, SearchConfig(kinds=ONE_THREE, max_crossings=4))
    end = replay(trefoil, res.sequence)
    back = replay(end, inverse_sequence(trefoil, res.sequence))
    assert canonical_key(back) == canonical_key(trefoil)


def test_strategies_agree_on_exhausted_runs(trefoil):
    cfg = dict(kinds=ONE_THREE, max_crossings=5, stop_at_simplified=False)
    a = explore(trefoil, SearchConfig(**cfg))
    b = explore(trefoil, SearchConfig(strategy="priority", **cfg))
    assert a.visited == b.visited and a.status == b.status


def test_mirror_quotient_never_visits_more(trefoil):
    cfg = dict(kinds=ONE_THREE, max_crossings=5, stop_at_simplified=False)
    a = explore(trefoil, SearchConfig(**cfg))
    b = explore(trefoil, SearchConfig(mirror_quotient=True, **cfg))
    assert b.visited <= a.visited
