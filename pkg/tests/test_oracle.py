import dataclasses
import math

import numpy as np
import pytest

from geocover.errors import OracleTimeout, PointOutsidePolygon
from geocover.geometry import validate_polygon
from geocover.greedy import contiguous_greedy
from geocover.oracle import (
    VisibilityOracle,
    brute_force_distance,
    brute_force_opt,
    maximality_check,
    packing_lower_bound,
    packing_points,
    verify_coverage,
)

from conftest import rectangle


def two_lobes():
    # 0.5 x 1.4 lobes on either end of a 3-long, unit-wide neck
    lo, hi, a = -0.2, 1.2, 0.5
    return validate_polygon(
        [(0, lo), (0, hi), (a, hi), (a, 1), (a + 3, 1), (a + 3, hi), (2 * a + 3, hi),
         (2 * a + 3, lo), (a + 3, lo), (a + 3, 0), (a, 0), (a, lo)]
    )


def test_distance_square(unit_square):
    assert math.isclose(brute_force_distance(unit_square, (0, 0), (1, 1)), math.sqrt(2), abs_tol=1e-12)


def test_distance_lshape(lshape):
    d = brute_force_distance(lshape, (1.5, 0.9), (0.9, 1.5))
    assert math.isclose(d, 2 * math.sqrt(0.26), abs_tol=1e-12)


def test_distance_same_point(lshape):
    assert brute_force_distance(lshape, (0.3, 0.3), (0.3, 0.3)) == 0.0


def test_distance_outside(lshape):
    with pytest.raises(PointOutsidePolygon):
        brute_force_distance(lshape, (1.5, 1.5), (0.5, 0.5))


def test_grazing_counts_as_visible(lshape):
    # the segment touches the reflex vertex (1, 1) exactly
    O = VisibilityOracle(lshape)
    assert O.visible(np.array([[0.5, 1.5]]), np.array([[1.5, 0.5]]))[0, 0]


def test_verify_single_center(unit_square):
    rep = verify_coverage(unit_square, [(0.5, 0.5)])
    assert rep.valid and rep.max_uncovered_excess == 0.0


def test_verify_reports_far_gaps():
    P = rectangle(3, 3)
    rep = verify_coverage(P, [(0.5, 0.5)])
    assert not rep.valid
    assert rep.max_uncovered_excess > 0
    for g in rep.gaps:
        for p in (g.start.xy, g.end.xy):
            assert math.dist(p, (0.5, 0.5)) >= 1.0 - 1e-9


def test_verify_gap_is_exact(big_square):
    # two disks on the bottom edge leaving exactly (-8, -7) open
    rep = verify_coverage(big_square, [(-9.0, -10.0), (-6.0, -10.0)])
    bottom = [g for g in rep.gaps if abs(g.start.xy[1] + 10) < 1e-12 and abs(g.end.xy[1] + 10) < 1e-12]
    xs = sorted(sorted((g.start.xy[0], g.end.xy[0])) for g in bottom)
    assert any(abs(a + 8) < 1e-6 and abs(b + 7) < 1e-6 for a, b in xs)


def test_packing_small(unit_square):
    assert packing_lower_bound(unit_square) == 1


def test_packing_thin_rectangle(thin_rect):
    pts = packing_points(thin_rect)
    assert len(pts) >= 4
    O = VisibilityOracle(thin_rect)
    D = O.pairwise(np.array(pts), np.array(pts))
    np.fill_diagonal(D, np.inf)
    assert D.min() > 2.0


def test_packing_long_rectangle():
    assert packing_lower_bound(rectangle(1000, 1)) >= 499


def test_brute_force_small(unit_square):
    k, centers = brute_force_opt(unit_square)
    assert k == 1
    assert verify_coverage(unit_square, centers).valid


def test_brute_force_two_lobes():
    P = two_lobes()
    k, centers = brute_force_opt(P)
    assert k == 3
    assert verify_coverage(P, centers).valid
    assert packing_lower_bound(P) == 3


def test_brute_force_k_max():
    with pytest.raises(OracleTimeout):
        brute_force_opt(rectangle(20, 0.5), center_grid_res=0.25, boundary_sample_res=0.25, k_max=3)


def test_maximality_and_mutation():
    P = validate_polygon([(0, 0), (0, 1), (3, 1), (3, 2), (5, 2), (5, 0)])
    sol = contiguous_greedy(P, 0)
    assert maximality_check(P, sol)
    k = next(i for i, r in enumerate(sol.trace) if r.c_after is not None and r.kind == "augment")
    rec = sol.trace[k]
    s = rec.c_after.s - 0.01
    from geocover.geometry import point_at_arclength

    bad = list(sol.trace)
    bad[k] = dataclasses.replace(rec, c_after=point_at_arclength(P, s))
    mutated = dataclasses.replace(sol, trace=bad)
    ok, fails = maximality_check(P, mutated, detail=True)
    assert not ok and fails[0][0] == k


def test_maximality_single_disk():
    P = rectangle(0.5, 0.5)
    sol = contiguous_greedy(P, 0)
    assert sol.k == 1 and maximality_check(P, sol)
