import math

import numpy as np
import pytest

from geocover.corridor import (
    corridor_bound,
    cover_corridor,
    extract_corridors,
    large_perimeter_cover,
    medial_axis,
    plan_corridor,
)
from geocover.generators import generate_random_polygon
from geocover.geometry import distance_to_boundary, validate_polygon
from geocover.oracle import verify_coverage
from geocover.shortest_path import geodesic_distance

from conftest import rectangle, regular_polygon

# reflex vertex (5, 3) facing the floor 3 below it
STEP = [(0, 0), (0, 3), (5, 3), (5, 6), (20, 6), (20, 0)]


def comb(teeth=3, length=5.0, width=0.5, gap=1.5):
    pts = [(0.0, -1.0), (0.0, 0.0)]
    x = gap
    for _ in range(teeth):
        pts += [(x, 0.0), (x, length), (x + width, length), (x + width, 0.0)]
        x += width + gap
    pts += [(x, 0.0), (x, -1.0)]
    return validate_polygon(pts)


def _feature_distance(P, f, p):
    kind, i = f
    if kind == "vertex":
        return math.dist(P.vertices[i], p)
    a, b = np.array(P.edge(i), dtype=float)
    u = b - a
    t = float(np.clip((np.asarray(p) - a) @ u / (u @ u), 0.0, 1.0))
    return float(np.linalg.norm(a + t * u - p))


def test_rectangle_axis():
    P = rectangle(8, 1)
    ax = medial_axis(P)
    segs = sorted(ax.edges, key=lambda e: -e.length)
    spine = segs[0]
    assert math.isclose(spine.length, 7.0, abs_tol=1e-6)
    ends = sorted([spine.p0, spine.p1])
    assert math.dist(ends[0], (0.5, 0.5)) < 1e-6 and math.dist(ends[1], (7.5, 0.5)) < 1e-6
    assert len(ax.edges) == 5
    assert all(e.kind == "segment" for e in ax.edges)
    for e in segs[1:]:
        assert math.isclose(e.length, math.sqrt(0.5), abs_tol=1e-6)


def test_convex_has_no_parabola():
    P = regular_polygon(7, 3.0)
    assert all(e.kind == "segment" for e in medial_axis(P).edges)


def test_lshape_parabola(lshape):
    ax = medial_axis(lshape)
    par = [e for e in ax.edges if e.kind == "parabola"]
    assert par
    reflex = lshape.vertices.index((1.0, 1.0))
    assert all(("vertex", reflex) in e.features for e in par)


@pytest.mark.parametrize("P", [rectangle(8, 1), validate_polygon(STEP), comb()])
def test_axis_points_equidistant(P):
    rng = np.random.default_rng(0)
    for e in medial_axis(P).edges:
        for lam in rng.uniform(0, 1, 200 // 10):
            p = e.point(float(lam))
            d0, d1 = (_feature_distance(P, f, p) for f in e.features)
            assert abs(d0 - d1) <= 1e-7
            assert distance_to_boundary(P, p) >= min(d0, d1) - 1e-7


def test_axis_is_tree():
    P = comb()
    ax = medial_axis(P)
    m = len(ax.edges)
    assert sum(len(a) for a in ax.adjacency) // 2 >= m - 1
    seen = {0}
    stack = [0]
    while stack:
        for j in ax.adjacency[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    assert len(seen) == m


def test_extract_rectangle():
    P = rectangle(8, 1)
    cs = extract_corridors(medial_axis(P), 2.5, P)
    assert len(cs) == 1
    ports = cs[0].boundary_portions
    assert len(ports) == 2
    assert all(math.isclose(p.length, 7.0, abs_tol=1e-6) for p in ports)


def test_extract_square_empty(unit_square):
    assert extract_corridors(medial_axis(unit_square), 2.5, unit_square) == []


def test_extract_comb_teeth():
    P = comb()
    cs = extract_corridors(medial_axis(P), 2.5, P)
    assert len(cs) == 3
    for c in cs:
        assert c.axis_edge.length >= 2.5


def test_threshold_must_exceed_two(unit_square):
    with pytest.raises(ValueError):
        extract_corridors(medial_axis(unit_square), 2.0, unit_square)


def test_rectangle_corridor_axis_centered():
    P = rectangle(8, 1)
    (c,) = extract_corridors(medial_axis(P), 2.5, P)
    plan = plan_corridor(P, c)
    assert plan.switches == 0 and plan.boundary_centers == 0
    xs = sorted(p[0] for p in plan.centers)
    steps = np.diff(xs)
    assert np.allclose(steps[:-1], math.sqrt(3), atol=1e-6)
    assert steps[-1] <= math.sqrt(3) + 1e-6
    assert len(xs) <= math.ceil(7 / math.sqrt(3)) + 2


def test_wide_corridor_switches():
    # half-width 0.95: axis disks gain ~1.25 per step, so boundary steps of 2
    P = rectangle(12, 1.9)
    (c,) = extract_corridors(medial_axis(P), 2.5, P)
    plan = plan_corridor(P, c)
    assert plan.axis_centers == 0 and plan.boundary_centers > 0
    ys = {round(p[1], 9) for p in plan.centers}
    assert ys == {0.0, 1.9}


def test_parabolic_corridor():
    P = validate_polygon(STEP)
    cs = extract_corridors(medial_axis(P), 2.5, P)
    par = [c for c in cs if c.axis_edge.kind == "parabola"]
    assert len(par) == 1
    c = par[0]
    # y = ((x - 5)^2 + 9) / 6 for x in [5, 8]; the end at x = 5 is a tangent
    # junction, located only to about 1e-5
    exp = 1.5 * math.asinh(1.0) + 1.5 * math.sqrt(2.0)
    assert math.isclose(c.axis_edge.length, exp, abs_tol=1e-4)
    centers = cover_corridor(P, c)
    assert (5.0, 3.0) in [tuple(p) for p in centers]
    edge = next(p for p in c.boundary_portions if p.kind == "edge")
    a, b = P.edge(edge.index)
    for t in np.linspace(edge.t0, edge.t1, 50):
        q = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        assert min(geodesic_distance(P, x, q) for x in centers) <= 1.0 + 1e-9
    assert len(centers) <= corridor_bound(c)


def test_unit_coverable_polygon(unit_square):
    sol = large_perimeter_cover(unit_square)
    assert sol.info["corridors"] == []
    assert 1 <= sol.k <= unit_square.n
    assert verify_coverage(unit_square, sol.centers).valid


def test_rectangle_cover():
    P = rectangle(8, 1)
    sol = large_perimeter_cover(P)
    assert verify_coverage(P, sol.centers).valid
    assert sol.info["short_centers"] <= 4


@pytest.mark.parametrize("shape,n,seed", [("corridor", 16, 1), ("star", 12, 2), ("walk", 12, 3)])
def test_cover_valid_random(shape, n, seed):
    P = validate_polygon(generate_random_polygon(n, seed, shape))
    sol = large_perimeter_cover(P)
    assert verify_coverage(P, sol.centers).valid
