import math

import numpy as np
import pytest

from geocover.center import cover_sites, geodesic_center, test_cover
from geocover.errors import PointOutsidePolygon
from geocover.geometry import validate_polygon
from geocover.oracle import VisibilityOracle, grid_minimax


def test_single_site(unit_square):
    r = geodesic_center(unit_square, [(0.2, 0.3)])
    assert r.radius == 0.0 and tuple(r.center) == (0.2, 0.3)


def test_pair_is_midpoint(big_square):
    r = geodesic_center(big_square, [(0.0, 0.0), (3.0, 4.0)])
    assert math.isclose(r.radius, 2.5, abs_tol=1e-12)
    assert math.dist(r.center, (1.5, 2.0)) < 1e-12


def test_pair_around_corner(lshape):
    # path bends at (1, 1); the midpoint lies on the longer leg
    a, b = (1.9, 0.1), (0.1, 1.9)
    r = geodesic_center(lshape, [a, b])
    d = 2 * math.dist(a, (1, 1))
    assert math.isclose(r.radius, d / 2, abs_tol=1e-12)


def test_equilateral_triple(big_square):
    pts = [(math.cos(a), math.sin(a)) for a in (0.1, 0.1 + 2 * math.pi / 3, 0.1 + 4 * math.pi / 3)]
    r = geodesic_center(big_square, pts)
    assert math.isclose(r.radius, 1.0, abs_tol=1e-9)
    assert math.hypot(*r.center) < 1e-9


def test_obtuse_triple_is_pair(big_square):
    r = geodesic_center(big_square, [(0, 0), (4, 0), (2, 0.3)])
    assert math.isclose(r.radius, 2.0, abs_tol=1e-12)


def test_triple_in_lshape_matches_grid(lshape):
    sites = [(0.1, 1.9), (1.9, 0.1), (0.05, 0.05)]
    r = geodesic_center(lshape, sites)
    _, best = grid_minimax(lshape, sites, oracle=VisibilityOracle(lshape))
    assert r.radius <= best + 1e-9
    assert best - r.radius < 1e-6


def test_duplicates_collapse(big_square):
    r = geodesic_center(big_square, [(0, 0), (0, 0), (2, 0)])
    assert math.isclose(r.radius, 1.0)


def test_site_outside(lshape):
    with pytest.raises(PointOutsidePolygon):
        geodesic_center(lshape, [(1.5, 1.5), (0.5, 0.5)])


def test_many_sites_against_grid():
    rng = np.random.default_rng(4)
    P = validate_polygon([(0, 0), (0, 3), (1, 3), (1, 1), (3, 1), (3, 0)])
    O = VisibilityOracle(P)
    for _ in range(3):
        sites = [tuple(p) for p in rng.uniform(0, 1, (6, 2))] + [(0.5, 2.5), (2.5, 0.5)]
        r = geodesic_center(P, sites)
        _, best = grid_minimax(P, sites, oracle=O)
        assert abs(r.radius - best) < 1e-6
        assert max(O.pairwise(np.array([r.center]), np.array(sites))[0]) <= r.radius + 1e-9


def test_cover_predicate(thin_rect):
    c = thin_rect.boundary_point(0, 0.0)
    # sites (0,0),(0,0.1),(8,0.1): far too long for one disk
    assert not test_cover(thin_rect, c, 2)
    assert test_cover(thin_rect, c, 1)
    assert cover_sites(thin_rect, c, 1) == [(0.0, 0.0), (0.0, 0.1)]
