import math
from fractions import Fraction

import numpy as np
import pytest

from geocover.errors import DuplicateVertex, SelfIntersecting, TooFewVertices, ZeroArea
from geocover.geometry import (
    boundary_arc,
    orient,
    point_at_arclength,
    segment_inside,
    signed_area,
    validate_polygon,
)

from conftest import rectangle


def test_clockwise_square_kept():
    P = validate_polygon([(0, 0), (0, 1), (1, 1), (1, 0)])
    assert P.perimeter == 4
    assert signed_area(P.vertices) < 0
    assert P.vertices[0] == (0, 0)


def test_counterclockwise_input_reoriented():
    P = validate_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert P.perimeter == 4
    assert signed_area(P.vertices) < 0


@pytest.mark.parametrize(
    "pts, exc",
    [
        ([(0, 0), (1, 1), (1, 0), (0, 1)], SelfIntersecting),
        ([(0, 0), (1, 1)], TooFewVertices),
        ([(0, 0), (0, 1), (0, 1), (1, 0)], DuplicateVertex),
        ([(0, 0), (1, 1), (2, 2)], ZeroArea),
    ],
)
def test_invalid_polygons(pts, exc):
    with pytest.raises(exc):
        validate_polygon(pts)


def test_collinear_vertices_merged():
    P = validate_polygon([(0, 0), (0, 0.5), (0, 1), (1, 1), (1, 0)])
    assert P.n == 4


def test_boundary_arc_examples(unit_square):
    P = unit_square
    assert boundary_arc(P, P.boundary_point(0, 0), P.boundary_point(2, 0)).length == pytest.approx(2)
    u = P.boundary_point(1, 0.3)
    assert boundary_arc(P, u, u).length == 0
    wrap = boundary_arc(P, P.boundary_point(3, 0.5), P.boundary_point(0, 0.5))
    assert wrap.length == pytest.approx(1)


def test_point_at_arclength(unit_square):
    P = unit_square
    assert point_at_arclength(P, 0).xy == P.vertices[0]
    mid = point_at_arclength(P, 2.5)
    a, b = P.edge(2)
    assert mid.xy == pytest.approx(((a[0] + b[0]) / 2, (a[1] + b[1]) / 2))
    assert point_at_arclength(P, P.perimeter).xy == P.vertices[0]


def test_arclength_roundtrip_and_complement():
    P = validate_polygon([(0, 0), (0, 2), (1, 2), (1, 1), (2, 1), (2, 0)])
    rng = np.random.default_rng(3)
    for _ in range(200):
        i = int(rng.integers(P.n))
        t = float(rng.uniform())
        p = P.boundary_point(i, t)
        q = point_at_arclength(P, p.s)
        assert math.dist(p.xy, q.xy) <= 1e-12
        r = P.boundary_point(int(rng.integers(P.n)), float(rng.uniform()))
        if abs(r.s - p.s) > 1e-12:
            total = boundary_arc(P, p, r).length + boundary_arc(P, r, p).length
            assert total == pytest.approx(P.perimeter, abs=1e-12)


def test_orient_examples():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (1, 0), (2, 0)) == 0
    assert orient((0, 0), (1, 0), (0, -1)) == -1


def _exact_sign(a, b, c):
    a, b, c = [tuple(map(Fraction, p)) for p in (a, b, c)]
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def test_orient_exact_on_near_collinear_points():
    rng = np.random.default_rng(0)
    for _ in range(500):
        a = (0.5 + rng.integers(0, 12) * 2.0 ** -50, 0.5)
        b = (12.0, 12.0)
        c = (24.0, 24.0 + rng.integers(-3, 4) * 2.0 ** -48)
        s = orient(a, b, c)
        assert s == _exact_sign(a, b, c)
        assert orient(b, a, c) == -s
        assert orient(a, c, b) == -s


def test_segment_inside(lshape):
    assert segment_inside(lshape, (0.5, 0.5), (1.5, 0.5))
    assert not segment_inside(lshape, (1.5, 0.9), (0.9, 1.5))
    # running along an edge and grazing the reflex vertex both count
    assert segment_inside(lshape, (0, 0), (0, 2))
    assert segment_inside(lshape, (0.5, 1.5), (1.5, 0.5))


def test_bbox_and_area():
    P = rectangle(3, 2)
    assert P.bbox == (0, 0, 3, 2)
    assert P.area == pytest.approx(6)
