import pytest

from oracles import euler_genus, face_cycles, walk
from tracking import tracked_dart
from planaria.codec import realize
from planaria.core import (CurveDiagram, InvalidDiagram, check, curve_order, faces, gauss_word, genus,
                           side_histogram, validate, whitney_index)
from planaria.moves import ALL_KINDS, R3, _triangle, apply_traced, enumerate_moves


def test_bare_circle_is_valid_with_two_faces():
    c = CurveDiagram()
    assert validate(c) is None
    assert len(faces(c)) == 2
    assert genus(c) == 0


def test_kink_is_valid(kink):
    assert validate(kink) is None
    assert side_histogram(kink) == [1, 1, 2]
    assert genus(kink) == 0


def test_fixed_point_in_pairing_is_reported(kink):
    bad = CurveDiagram((0, 2, 1, 3))
    assert validate(bad) == "edge_pairing not fixed-point-free"
    with pytest.raises(InvalidDiagram):
        check(bad)


def test_two_components_rejected():
    # two separate kinks would need two components: pair darts within each crossing
    two = CurveDiagram((1, 0, 3, 2, 5, 4, 7, 6))
    assert validate(two) == "curve is not a single closed component"


def test_non_involution_rejected():
    assert validate(CurveDiagram((1, 2, 3, 0))) == "edge_pairing not an involution"


def test_trefoil_faces(trefoil):
    hist = side_histogram(trefoil)
    assert len(hist) == 5
    assert hist.count(3) == 2
    assert genus(trefoil) == 0


def test_faces_match_independent_orbits(corpus):
    for d in corpus:
        if d.is_bare:
            continue
        ours = sorted(sorted(f.boundary) for f in faces(d))
        theirs = sorted(sorted(c) for c in face_cycles(d.alpha))
        assert ours == theirs
        assert sum(f.sides for f in faces(d)) == 4 * d.n


def test_euler_formula_on_corpus(corpus):
    for d in corpus:
        assert len(faces(d)) == d.n + 2 - 2 * genus(d)
        if d.n:
            assert genus(d) == euler_genus(d.alpha) == 0


def test_torus_clasp_genus(fx):
    d = fx["torus.right"]
    assert genus(d) == 1
    assert len(faces(d)) == d.n + 2 - 2


def test_curve_order_is_double_occurrence(corpus):
    for d in corpus:
        if d.is_bare:
            continue
        order = curve_order(d)
        assert order == walk(d.alpha)
        assert all(order.count(c) == 2 for c in set(order))
        assert len(order) == 2 * d.n


def test_kink_gauss_word(kink):
    assert gauss_word(kink) == [1, 1]


def test_curve_order_of_circle_is_an_error():
    with pytest.raises(InvalidDiagram):
        curve_order(CurveDiagram())


def test_whitney_normalization():
    assert whitney_index(CurveDiagram()) == 1
    assert whitney_index(CurveDiagram(), direction=-1) == -1


def test_whitney_kink_values(kink):
    values = {whitney_index(kink, f, s) for f in range(3) for s in (1, -1)}
    assert values == {0, 2, -2}


def test_whitney_needs_genus_zero(fx):
    with pytest.raises(ValueError):
        whitney_index(fx["torus.right"])


def test_whitney_index_under_moves(corpus):
    checked = {k: 0 for k in ALL_KINDS}
    for d in corpus:
        if d.is_bare:
            continue
        for m in enumerate_moves(d, ALL_KINDS):
            e, trace = apply_traced(d, m)
            if e.is_bare:
                continue
            got = tracked_dart(d, m, trace)
            if got is None:
                continue
            x, y = got
            w0 = whitney_index(d, d.face_index()[1][x], 1, x)
            w1 = whitney_index(e, e.face_index()[1][y], 1, y)
            if m.kind in ("1a", "1b"):
                assert abs(w1 - w0) == 1, m
            else:
                assert w1 == w0, m
            checked[m.kind] += 1
    assert all(checked.values()), checked


def test_moves_preserve_validity(corpus):
    for d in corpus:
        for m in enumerate_moves(d, ALL_KINDS):
            e, _ = apply_traced(d, m)
            assert validate(e) is None
            assert len(faces(e)) == e.n + 2 - 2 * genus(e)


def test_r3_triangle_has_three_crossings(trefoil):
    for m in enumerate_moves(trefoil, [R3]):
        assert len({t >> 2 for t in _triangle(trefoil, m.anchor[0])}) == 3


def test_realize_gives_genus_zero():
    for word in ([1, 1], [1, 2, 2, 1], [1, 2, 3, 1, 2, 3]):
        assert genus(realize(word)) == 0
