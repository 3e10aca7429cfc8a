import math

import pytest

from geocover.errors import AllCoverable
from geocover.geometry import validate_polygon
from geocover.greedy import (
    ContiguousGreedy,
    CoverState,
    augment_short,
    contiguous_greedy,
    cover_long_segment,
    find_first_uncoverable,
)
from geocover.oracle import certify_extensions, maximality_check, verify_coverage
from geocover.shortest_path import geodesic_distance

from conftest import rectangle, regular_polygon


def _state(P, j, t=0.0):
    return CoverState(P.boundary_point(j, t), 0.0, [], [])


@pytest.mark.parametrize("d,expect", [(5.0, [1.0, 3.0]), (2.0, []), (2.1, [1.0])])
def test_long_segment_offsets(d, expect):
    P = rectangle(d, 0.5)
    # edge 1 runs (0, 0.5) -> (d, 0.5)
    st = cover_long_segment(P, _state(P, 1))
    assert [round(c[0], 12) for c in st.centers] == expect
    assert math.isclose(st.covered_length, 2 * len(expect))
    assert all(c[1] == 0.5 for c in st.centers)


def test_long_segment_covers_claimed_arc():
    P = rectangle(2.1, 0.5)
    st = cover_long_segment(P, _state(P, 1))
    (c,) = st.centers
    for x in (0.0, 1.0, 2.0):
        assert geodesic_distance(P, c, (x, 0.5)) <= 1.0 + 1e-12
    assert geodesic_distance(P, c, (2.1, 0.5)) > 1.0


def test_first_uncoverable_thin_rectangle(thin_rect):
    u, probes = find_first_uncoverable(thin_rect, thin_rect.boundary_point(0, 0.0))
    assert thin_rect.vertices[u] == (8.0, 0.1)
    assert probes[0] == (1, True)


def test_first_uncoverable_small_square():
    P = rectangle(0.5, 0.5)
    with pytest.raises(AllCoverable):
        find_first_uncoverable(P, P.boundary_point(0, 0.0))


@pytest.fixture
def arc_polygon():
    # vertices on a flat circular arc 0.31 apart: c plus six steps fits one
    # disk (chord 1.86), seven steps does not (chord 2.17)
    R, s, N = 60.0, 0.31, 24
    th = s / R
    arc = [(R * math.sin((k - N / 2) * th), R - R * math.cos((k - N / 2) * th)) for k in range(N + 1)]
    P = validate_polygon(arc + [(arc[-1][0], 1.0), (arc[0][0], 1.0)])
    return P, P.vertices.index(arc[N - 2])


def test_probe_transcript(arc_polygon):
    P, j = arc_polygon
    i = j + 1
    u, probes = find_first_uncoverable(P, P.boundary_point(j, 0.0))
    assert u == i + 6
    assert probes[:5] == [(i, True), (i + 1, True), (i + 2, True), (i + 4, True), (i + 8, False)]
    # binary search stays inside (i+4, i+8]
    assert all(i + 4 < v <= i + 8 for v, _ in probes[5:])


def test_augment_single_site_branch_a(big_square):
    # c on e itself, so the committed sites are just c: x1 sits 2 further along
    P = big_square
    c = P.boundary_point(0, 0.0)
    c2, center, branch = augment_short(P, c, 1)
    assert branch == "x1"
    assert c2.edge_index == 0
    assert math.isclose(geodesic_distance(P, c.xy, c2.xy), 2.0, abs_tol=1e-12)
    mid = ((c.xy[0] + c2.xy[0]) / 2, (c.xy[1] + c2.xy[1]) / 2)
    assert math.dist(center, mid) < 1e-12


def test_augment_two_sites_branch_b():
    # sites c = (0, 0) and w = (1.8, 0); e leaves w at an acute angle so the
    # x1 midpoint misses the lens and the lower lens corner decides
    P = validate_polygon([(-1, 0), (1.8, 0), (0.3, -3), (-1, -3)])
    g = ContiguousGreedy(P, 0)
    t, center, branch, _, cert, ubar = g.augment_short((0.0, 0.0), 0, 2)
    assert ubar == [(0.0, 0.0), (1.8, 0.0)]
    assert branch == "x2" and cert["x1"] is None
    # closed form: I = (0.9, -sqrt(1 - 0.81)); solve |w + s*d - I| = 1 for the far root
    I = (0.9, -math.sqrt(1 - 0.81))
    w = (1.8, 0.0)
    L = math.hypot(1.5, 3.0)
    d = (-1.5 / L, -3.0 / L)
    f = (w[0] - I[0], w[1] - I[1])
    bq = f[0] * d[0] + f[1] * d[1]
    s_far = -bq + math.sqrt(bq * bq - (f[0] ** 2 + f[1] ** 2 - 1.0))
    assert math.isclose(t * L, s_far, abs_tol=1e-9)
    assert math.dist(center, I) < 1e-12


def test_level_two_roots_at_most_two():
    # several polygons: F = 2 never has more than two roots on e, a second one at v_{u-1}
    from geocover.generators import generate_random_polygon

    for seed in range(6):
        P = validate_polygon(generate_random_polygon(12, seed, "walk"))
        sol = contiguous_greedy(P, 0)
        for rec in sol.trace:
            if rec.kind != "augment":
                continue
            roots = rec.f2_roots
            assert len(roots) <= 2
            if len(roots) == 2:
                v_prev = rec.certificate["v_prev"]
                assert min(math.dist(r, v_prev) for r in roots) <= 1e-9


def test_small_square_one_disk():
    sol = contiguous_greedy(rectangle(0.5, 0.5), 0)
    assert sol.k == 1


def test_regular_12gon_one_disk():
    sol = contiguous_greedy(regular_polygon(12, 0.9), 0)
    assert sol.k == 1


def test_thin_rectangle(thin_rect):
    sol = contiguous_greedy(thin_rect, 0)
    assert 7 <= sol.k <= 9
    assert verify_coverage(thin_rect, sol.centers).valid
    assert maximality_check(thin_rect, sol)


def test_trace_invariants(lshape):
    sol = contiguous_greedy(lshape, 1)
    assert sol.start_vertex == 1
    prev = -1.0
    for rec in sol.trace:
        assert rec.covered_after > rec.covered_before >= prev - 1e-12
        prev = rec.covered_after
    assert sol.sum_Q > 0 and sol.sum_q == sol.sum_Q
    assert verify_coverage(lshape, sol.centers).valid
    for row in certify_extensions(lshape, sol):
        assert row["branch_ok"] and row["roots_ok"]
