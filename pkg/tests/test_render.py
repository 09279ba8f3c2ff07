import pytest

from oracles import turning_number
from planaria.codec import realize
from planaria.core import CurveDiagram, whitney_index
from planaria.render import RenderError, count_self_intersections, layout, polyline, to_dot, to_svg


def _faces(d):
    return range(len(d.face_index()[0]))


def test_circle_has_no_crossings():
    pts = polyline(CurveDiagram())
    assert len(pts) > 3
    assert count_self_intersections(pts) == 0
    assert abs(abs(turning_number(pts)) - 1) < 1e-9


def test_kink_drawn_with_one_crossing(kink):
    for f in _faces(kink):
        assert count_self_intersections(polyline(kink, f)) == 1


def test_boxed_curve_drawn_with_sixteen(fx):
    assert count_self_intersections(polyline(fx["fig3.main"])) == 16


def test_intersections_equal_crossings_for_every_outer_face(corpus):
    for d in corpus:
        if d.is_bare:
            continue
        for f in _faces(d):
            assert count_self_intersections(polyline(d, f)) == d.n, (d, f)


def test_turning_number_matches_whitney_index(corpus):
    # screen y points down, which flips the sense of rotation
    for d in corpus:
        if d.is_bare or d.n > 4:
            continue
        for f in _faces(d):
            t = turning_number(polyline(d, f))
            assert abs(t - round(t)) < 1e-6
            assert round(t) == -whitney_index(d, f, 1, 0)


def test_crossings_sit_on_the_path(trefoil):
    pos, path = layout(trefoil)
    assert sorted(c for c in path if c < trefoil.n) == [0, 0, 1, 1, 2, 2]
    assert pos.shape[1] == 2


def test_output_is_deterministic(trefoil):
    assert to_svg(trefoil) == to_svg(trefoil)
    assert to_dot(trefoil) == to_dot(trefoil)


def test_svg_and_dot_shapes(trefoil):
    svg = to_svg(trefoil, size=200)
    assert svg.startswith("<svg") and svg.count("<circle") == 3
    assert 'width="200"' in svg and "-0.000" not in svg
    dot = to_dot(trefoil)
    assert dot.startswith("graph curve {") and dot.rstrip().endswith("}")
    assert "v0 [pos=" in dot


def test_bare_dot():
    assert "circle" in to_dot(CurveDiagram())


def test_torus_curves_are_refused(fx):
    with pytest.raises(RenderError):
        layout(fx["torus.right"])
    with pytest.raises(RenderError):
        layout(fx["torus.left"])


def test_crossing_counter_examples():
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert count_self_intersections(square) == 0
    bowtie = [(0, 0), (1, 1), (1, 0), (0, 1)]
    assert count_self_intersections(bowtie) == 1


def test_finger_has_two():
    d = realize([1, 2, 2, 1])
    assert count_self_intersections(polyline(d)) == 2
