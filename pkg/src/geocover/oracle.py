"""Brute-force oracles: visibility-graph distances, coverage verification,
packing lower bound, and a small-instance set-cover optimum.

Nothing here uses the funnel engine except :func:`verify_coverage`, which is
an exact checker built on distance profiles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import shortest_path as _csgraph_sp

from .errors import OracleTimeout, PointOutsidePolygon
from .geometry import (
    BoundaryPoint,
    SimplePolygon,
    boundary_arc,
    point_at_arclength,
    points_in_polygon,
    segment_inside,
)

_EPS = 1e-12


class VisibilityOracle:
    """Geodesic distances from the visibility graph of the polygon vertices.

    Vertex-to-vertex distances come from an all-pairs Dijkstra over the
    visibility graph; a point-to-point distance is the best of the direct
    segment (if visible) and ``|u - v_i| + D[i, j] + |v_j - w|`` over vertices
    visible from each endpoint.
    """

    def __init__(self, P: SimplePolygon):
        self.P = P
        self.V = P.array
        self.n = P.n
        self._edges_a = self.V
        self._edges_b = np.roll(self.V, -1, axis=0)
        vis = self.visible(self.V, self.V)
        idx = np.arange(self.n)
        vis[idx, (idx + 1) % self.n] = True
        vis[(idx + 1) % self.n, idx] = True
        vis[idx, idx] = False
        W = np.linalg.norm(self.V[:, None, :] - self.V[None, :, :], axis=2)
        graph = np.where(vis, W, 0.0)
        self.D, self._pred = _csgraph_sp(graph, method="D", directed=False, return_predecessors=True)

    def visible(self, A, B) -> np.ndarray:
        """Boolean matrix: segment A[i] -> B[j] lies in the closed polygon."""
        A = np.asarray(A, dtype=float).reshape(-1, 2)
        B = np.asarray(B, dtype=float).reshape(-1, 2)
        out = np.zeros((len(A), len(B)), dtype=bool)
        chunk = max(1, 2_000_000 // max(1, len(B) * self.n))
        for s in range(0, len(A), chunk):
            out[s : s + chunk] = self._visible_block(A[s : s + chunk], B)
        return out

    def _visible_block(self, A, B):
        c, d = self._edges_a, self._edges_b
        scale = self.P.scale
        tol = 1e-12 * scale * scale
        a = A[:, None, None, :]
        b = B[None, :, None, :]
        cc = c[None, None, :, :]
        dd = d[None, None, :, :]

        def cr(o, p, q):
            return (p[..., 0] - o[..., 0]) * (q[..., 1] - o[..., 1]) - (p[..., 1] - o[..., 1]) * (q[..., 0] - o[..., 0])

        o1 = cr(a, b, cc)
        o2 = cr(a, b, dd)
        o3 = cr(cc, dd, a)
        o4 = cr(cc, dd, b)
        proper = ((o1 > tol) & (o2 < -tol) | (o1 < -tol) & (o2 > tol)) & (
            (o3 > tol) & (o4 < -tol) | (o3 < -tol) & (o4 > tol)
        )
        crossed = proper.any(axis=2)
        # polygon vertex (edge start) lying on the open segment: hand to exact test
        ab = b - a
        L2 = (ab ** 2).sum(axis=-1)
        tpar = ((cc - a) * ab).sum(axis=-1) / np.where(L2 > 0, L2, 1.0)
        seglen = np.sqrt(np.maximum(L2, 1e-300))
        on_line = np.abs(o1) <= 1e-10 * scale * seglen
        grazing = (on_line & (tpar > 1e-12) & (tpar < 1 - 1e-12)).any(axis=2)
        mids = 0.5 * (A[:, None, :] + B[None, :, :])
        inside_mid = points_in_polygon(self.V, mids.reshape(-1, 2)).reshape(len(A), len(B))
        res = ~crossed & inside_mid
        near = _near_boundary(mids.reshape(-1, 2), c, d, 1e-10 * scale).reshape(len(A), len(B))
        # both ends on the same edge: the segment runs along that edge
        along = (_edge_dist(A, c, d)[:, None, :] <= 1e-10 * scale) & (
            _edge_dist(B, c, d)[None, :, :] <= 1e-10 * scale
        )
        along = along.any(axis=2)
        res |= along
        amb = np.argwhere((grazing | near) & ~crossed & ~along)
        for i, j in amb:
            res[i, j] = segment_inside(self.P, tuple(A[i]), tuple(B[j]))
        # zero-length segments are visible iff the point is in the polygon
        zero = L2[:, :, 0] == 0
        if zero.any():
            res[zero] = True
        return res

    def to_vertices(self, pts) -> np.ndarray:
        """Geodesic distance from each point to every polygon vertex (m x n)."""
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        vis = self.visible(pts, self.V)
        E = np.linalg.norm(pts[:, None, :] - self.V[None, :, :], axis=2)
        E = np.where(vis, E, np.inf)
        return np.min(E[:, :, None] + self.D[None, :, :], axis=1)

    def path(self, u, v) -> tuple[np.ndarray, float]:
        """Shortest polyline from u to v through the visibility graph."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if self.visible(u, v)[0, 0]:
            return np.array([u, v]), float(np.linalg.norm(v - u))
        Eu = np.where(self.visible(u, self.V)[0], np.linalg.norm(self.V - u, axis=1), np.inf)
        Ev = np.where(self.visible(v, self.V)[0], np.linalg.norm(self.V - v, axis=1), np.inf)
        tot = Eu[:, None] + self.D + Ev[None, :]
        i, j = np.unravel_index(int(np.argmin(tot)), tot.shape)
        chain = [j]
        while chain[-1] != i:
            chain.append(int(self._pred[i, chain[-1]]))
        pts = [u] + [self.V[k] for k in reversed(chain)] + [v]
        return np.array(pts), float(tot[i, j])

    def pairwise(self, A, B) -> np.ndarray:
        """Geodesic distance matrix between point sets A and B."""
        A = np.asarray(A, dtype=float).reshape(-1, 2)
        B = np.asarray(B, dtype=float).reshape(-1, 2)
        GA = self.to_vertices(A)  # distance from A to every vertex
        visB = self.visible(B, self.V)
        EB = np.where(visB, np.linalg.norm(B[:, None, :] - self.V[None, :, :], axis=2), np.inf)
        out = np.empty((len(A), len(B)))
        chunk = max(1, 4_000_000 // max(1, len(B) * self.n))
        for s in range(0, len(A), chunk):
            blk = GA[s : s + chunk]
            out[s : s + chunk] = np.min(blk[:, None, :] + EB[None, :, :], axis=2)
        direct = self.visible(A, B)
        eu = np.linalg.norm(A[:, None, :] - B[None, :, :], axis=2)
        return np.where(direct, eu, out)


def _polyline_point(pts, s):
    acc = 0.0
    for a, b in zip(pts, pts[1:]):
        seg = float(np.linalg.norm(b - a))
        if acc + seg >= s and seg > 0:
            return a + (s - acc) / seg * (b - a)
        acc += seg
    return pts[-1]


def _edge_dist(pts, c, d):
    e = d - c
    L2 = (e ** 2).sum(axis=1)
    w = pts[:, None, :] - c[None, :, :]
    t = np.clip((w * e[None]).sum(axis=2) / L2[None], 0.0, 1.0)
    foot = c[None] + t[..., None] * e[None]
    return np.linalg.norm(pts[:, None, :] - foot, axis=2)


def _near_boundary(pts, c, d, tol):
    return (_edge_dist(pts, c, d) <= tol).any(axis=1)


def _check_inside(P, p):
    if not P.contains(p):
        raise PointOutsidePolygon(f"point {tuple(p)} is outside the polygon")


def brute_force_distance(P: SimplePolygon, u, v) -> float:
    _check_inside(P, u)
    _check_inside(P, v)
    return float(VisibilityOracle(P).pairwise([u], [v])[0, 0])


def grid_minimax(P: SimplePolygon, sites, res: float | None = None, iters: int = 400, seed: int = 0, oracle=None):
    """Minimax point of ``sites`` by grid search then randomized refinement.

    Independent of the 1-center solver: distances come from the visibility
    graph.  After a coarse grid, each round samples random points in a disk
    around the incumbent; the disk grows on success and shrinks on failure.
    Random directions keep the search moving along the narrow valleys a
    max-of-cones function has, where an axis-aligned grid stalls.
    """
    O = oracle or VisibilityOracle(P)
    rng = np.random.default_rng(seed)
    sites = np.asarray(sites, dtype=float).reshape(-1, 2)
    lo, hi = P.array.min(axis=0), P.array.max(axis=0)
    h = res or float((hi - lo).max()) / 80.0
    xs = np.arange(lo[0], hi[0] + h, h)
    ys = np.arange(lo[1], hi[1] + h, h)
    G = np.array([(x, y) for x in xs for y in ys])
    G = G[points_in_polygon(P.vertices, G)]
    # geodesic midpoints of site pairs: the answer when two sites decide it
    mids = []
    for a in range(len(sites)):
        for b in range(a + 1, len(sites)):
            pts, length = O.path(sites[a], sites[b])
            mids.append(_polyline_point(pts, 0.5 * length))
    if mids:
        G = np.vstack([G, np.array(mids)])
    M = O.pairwise(G, sites).max(axis=1)
    i = int(np.argmin(M))
    c, best = G[i], float(M[i])
    rho = 2.0 * h
    for _ in range(iters):
        ang = rng.uniform(0.0, 2 * math.pi, 256)
        rad = rho * np.sqrt(rng.uniform(0.0, 1.0, 256))
        G = c[None, :] + np.stack([rad * np.cos(ang), rad * np.sin(ang)], axis=1)
        G = G[points_in_polygon(P.vertices, G)]
        if len(G) == 0:
            rho *= 0.5
            continue
        M = O.pairwise(G, sites).max(axis=1)
        i = int(np.argmin(M))
        if M[i] < best:
            c, best = G[i], float(M[i])
            rho *= 1.5
        else:
            rho *= 0.75
        if rho < 1e-13:
            break
    return (float(c[0]), float(c[1])), best


# -- coverage -----------------------------------------------------------


@dataclass
class CoverageReport:
    gaps: list = field(default_factory=list)  # BoundaryArc per uncovered stretch
    max_uncovered_excess: float = 0.0

    @property
    def valid(self) -> bool:
        return not self.gaps


def _union(intervals):
    out = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return out


def verify_coverage(P: SimplePolygon, centers, tol: float = 1e-7) -> CoverageReport:
    """Exact per-edge check that every boundary point is within 1 + tol of a center.

    The covered part of an edge for one center is a single interval (distance
    is convex along a segment) read off its distance profile.
    """
    engine = P.engine
    C = np.asarray([tuple(c) for c in centers], dtype=float).reshape(-1, 2)
    V = P.array
    W = np.roll(V, -1, axis=0)
    near = _edge_dist(C, V, W) <= 1.0 + tol if len(C) else np.zeros((0, P.n), dtype=bool)
    report = CoverageReport()
    for i in range(P.n):
        p0, p1 = P.vertices[i], P.vertices[(i + 1) % P.n]
        profiles = [engine.profile(tuple(C[k]), p0, p1, check=False) for k in np.nonzero(near[:, i])[0]]
        ivs = [iv for iv in (pr.sublevel(1.0 + tol) for pr in profiles) if iv is not None]
        covered = _union(ivs)
        holes = []
        prev = 0.0
        for a, b in covered:
            if a > prev:
                holes.append((prev, a))
            prev = max(prev, b)
        if prev < 1.0:
            holes.append((prev, 1.0))
        elen = P.edge_lengths[i]
        for a, b in holes:
            if (b - a) * elen <= 1e-12:
                continue
            ts = np.linspace(a, b, 17)
            vals = [min((pr(t) for pr in profiles), default=math.inf) for t in ts]
            report.max_uncovered_excess = max(report.max_uncovered_excess, max(vals) - 1.0)
            report.gaps.append(boundary_arc(P, P.boundary_point(i, a), P.boundary_point(i, b) if b < 1.0 else P.boundary_point((i + 1) % P.n, 0.0)))
    return report


# -- packing lower bound ------------------------------------------------


def _boundary_samples(P: SimplePolygon, step: float):
    pts, where = [], []
    for i in range(P.n):
        a, b = P.vertices[i], P.vertices[(i + 1) % P.n]
        m = max(1, int(math.ceil(P.edge_lengths[i] / step)))
        for k in range(m):
            t = k / m
            pts.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
            where.append((i, t))
    return np.array(pts), where


def packing_points(P: SimplePolygon, step: float | None = None, oracle=None) -> list:
    """Boundary points pairwise more than 2 apart, picked by a clockwise march.

    No unit disk holds two of them, so their count bounds OPT from below.
    """
    O = oracle or VisibilityOracle(P)
    step = step or max(0.02, P.perimeter / 40000.0)
    S, _ = _boundary_samples(P, step)
    blocked = np.zeros(len(S), dtype=bool)
    chosen = []
    i = 0
    while i < len(S):
        if blocked[i]:
            i += 1
            continue
        chosen.append(S[i])
        # geodesic >= Euclidean, so only samples within Euclidean 2 need the oracle
        cand = np.nonzero(np.linalg.norm(S - S[i], axis=1) <= 2.0)[0]
        d = O.pairwise(S[i : i + 1], S[cand])[0]
        blocked[cand[d <= 2.0]] = True
        i += 1
    return [(float(p[0]), float(p[1])) for p in chosen]


def packing_lower_bound(P: SimplePolygon, step: float | None = None, oracle=None) -> int:
    return len(packing_points(P, step, oracle))


# -- brute-force optimum ------------------------------------------------


def _reduce(cand_sets):
    """Drop candidates whose coverage is a subset of another's."""
    order = sorted(range(len(cand_sets)), key=lambda k: -bin(cand_sets[k]).count("1"))
    kept = []
    for k in order:
        s = cand_sets[k]
        if s == 0:
            continue
        if any(s | cand_sets[j] == cand_sets[j] for j in kept):
            continue
        kept.append(k)
    return kept


def _set_cover(universe: int, sets: list, k: int, elem_sets: dict, deadline):
    """Depth-limited search for <= k sets covering ``universe``; returns indices or None."""
    import time

    def lower_bound(rem):
        # elements whose covering families are pairwise disjoint need distinct sets
        used = 0
        lb = 0
        r = rem
        while r:
            e = (r & -r).bit_length() - 1
            r &= r - 1
            fam = elem_sets[e]
            if fam & used == 0:
                used |= fam
                lb += 1
        return lb

    def rec(rem, chosen):
        if rem == 0:
            return list(chosen)
        if len(chosen) >= k or time.monotonic() > deadline:
            return None
        if len(chosen) + lower_bound(rem) > k:
            return None
        # branch on the remaining element with the fewest covering sets
        best_e, best_f = None, None
        r = rem
        while r:
            e = (r & -r).bit_length() - 1
            r &= r - 1
            f = elem_sets[e]
            if best_f is None or bin(f).count("1") < bin(best_f).count("1"):
                best_e, best_f = e, f
        f = best_f
        opts = []
        while f:
            j = (f & -f).bit_length() - 1
            f &= f - 1
            opts.append(j)
        opts.sort(key=lambda j: -bin(sets[j] & rem).count("1"))
        for j in opts:
            chosen.append(j)
            res = rec(rem & ~sets[j], chosen)
            chosen.pop()
            if res is not None:
                return res
        return None

    return rec(universe, [])


def brute_force_opt(
    P: SimplePolygon,
    center_grid_res: float = 0.05,
    boundary_sample_res: float = 0.02,
    k_max: int = 6,
    time_limit: float = 120.0,
    oracle=None,
):
    """Smallest set of candidate centers covering the boundary: an upper bound on OPT.

    Candidates are grid points inside P plus boundary sample points. The
    sample cover is re-checked exactly; uncovered stretches add their
    midpoints to the sample and the search repeats.
    """
    import time

    O = oracle or VisibilityOracle(P)
    lo, hi = P.array.min(axis=0), P.array.max(axis=0)
    xs = np.arange(lo[0] + 0.5 * center_grid_res, hi[0], center_grid_res)
    ys = np.arange(lo[1] + 0.5 * center_grid_res, hi[1], center_grid_res)
    G = np.array([(x, y) for x in xs for y in ys]).reshape(-1, 2)
    G = G[points_in_polygon(P.vertices, G)] if len(G) else G
    S, _ = _boundary_samples(P, boundary_sample_res)
    mids = np.array([((a[0] + b[0]) / 2, (a[1] + b[1]) / 2) for a, b in (P.edge(i) for i in range(P.n))])
    cands = np.vstack([G, S, mids])
    universe_pts = S
    deadline = time.monotonic() + time_limit
    for _ in range(30):
        D = O.pairwise(cands, universe_pts) <= 1.0 + 1e-9
        sets = [int("".join("1" if b else "0" for b in row[::-1]), 2) if row.any() else 0 for row in D]
        kept = _reduce(sets)
        ksets = [sets[j] for j in kept]
        m = len(universe_pts)
        universe = (1 << m) - 1
        elem_sets = {}
        for e in range(m):
            fam = 0
            for jj, s in enumerate(ksets):
                if s >> e & 1:
                    fam |= 1 << jj
            if fam == 0:
                raise OracleTimeout(f"sample point {tuple(universe_pts[e])} has no candidate center")
            elem_sets[e] = fam
        sol = None
        for k in range(1, k_max + 1):
            sol = _set_cover(universe, ksets, k, elem_sets, deadline)
            if sol is not None:
                break
            if time.monotonic() > deadline:
                raise OracleTimeout("brute-force search hit the time limit")
        if sol is None:
            raise OracleTimeout(f"no cover with at most {k_max} candidate centers")
        centers = [tuple(map(float, cands[kept[j]])) for j in sol]
        rep = verify_coverage(P, centers)
        if rep.valid:
            return len(centers), centers
        extra = []
        for g in rep.gaps:
            mid = point_at_arclength(P, g.start.s + 0.5 * g.length)
            extra.append(mid.xy)
        universe_pts = np.vstack([universe_pts, np.array(extra)])
    raise OracleTimeout("sample refinement did not converge")


# -- greedy maximality --------------------------------------------------


def _arc_sites(P: SimplePolygon, start: BoundaryPoint, s_end: float) -> list:
    """``start``, the vertices clockwise after it up to arc length ``s_end``
    (measured from ``start``), and the boundary point at ``s_end``."""
    out = [start.xy]
    acc = (1.0 - start.t) * P.edge_lengths[start.edge_index]
    i = (start.edge_index + 1) % P.n
    while acc < s_end - 1e-15:
        out.append(P.vertices[i])
        acc += P.edge_lengths[i]
        i = (i + 1) % P.n
    end = point_at_arclength(P, start.s + s_end)
    if end.xy != out[-1]:
        out.append(end.xy)
    return out


def maximality_check(P: SimplePolygon, solution, delta: float = 1e-4, detail: bool = False):
    """Each greedy stretch [c, c'] fits one disk and [c, c' + delta] does not."""
    from .center import geodesic_center

    failures = []
    for k, rec in enumerate(solution.trace):
        if rec.c_after is None:
            continue
        c, c2 = rec.c_before, rec.c_after
        span = (c2.s - c.s) % P.perimeter
        r_in = geodesic_center(P, _arc_sites(P, c, span)).radius
        r_out = geodesic_center(P, _arc_sites(P, c, span + delta)).radius
        if not (r_in <= 1.0 + 1e-9 and r_out > 1.0):
            failures.append((k, r_in, r_out))
    if detail:
        return not failures, failures
    return not failures


def certify_extensions(P: SimplePolygon, solution, tol: float = 1e-7, oracle=None) -> list[dict]:
    """Re-check every extension step with visibility-graph distances.

    Branch x1 needs d(c', q) = 2 for the farthest committed site q with the
    point halfway along the geodesic inside the common region A; branch x2
    needs c' at distance exactly 1 from the nearest disk-disk intersection
    point. Also checks that F = 2 has at most two roots on the edge and that
    a second root sits at the edge's first vertex.
    """
    from .disk import disk_disk_intersections, region_contains

    O = oracle or VisibilityOracle(P)
    out = []
    for k, rec in enumerate(solution.trace):
        if rec.kind != "augment":
            continue
        cert = rec.certificate
        sites = np.array(cert["sites"], dtype=float)
        x = np.array(rec.c_after.xy, dtype=float)[None, :]
        dq = O.pairwise(x, sites)[0]
        qi = int(np.argmax(dq))
        pts, length = O.path(sites[qi], x[0])
        mid = _polyline_point(pts, 1.0) if length >= 1.0 else x[0]
        mid_in_A = region_contains(P, [tuple(s) for s in sites], tuple(mid), tol=tol)
        I = [ip.point for ip in disk_disk_intersections(P, [tuple(s) for s in sites])]
        dI = float(O.pairwise(x, np.array(I)).min()) if I else math.inf
        if rec.branch == "x1":
            branch_ok = abs(dq[qi] - 2.0) <= tol and mid_in_A
        else:
            branch_ok = abs(dI - 1.0) <= tol and not (abs(dq[qi] - 2.0) <= tol and mid_in_A)
        # distance from c' to A is 1 either way
        dA = min(dI, 1.0 if (abs(dq[qi] - 2.0) <= tol and mid_in_A) else math.inf)
        roots = rec.f2_roots
        v_prev = cert["v_prev"]
        roots_ok = len(roots) <= 2 and (
            len(roots) < 2 or min(math.dist(r, v_prev) for r in roots) <= 1e-9
        )
        out.append(
            {
                "step": k,
                "branch": rec.branch,
                "d_far": float(dq[qi]),
                "d_I": dI,
                "mid_in_A": mid_in_A,
                "d_A": dA,
                "branch_ok": bool(branch_ok),
                "n_roots": len(roots),
                "roots_ok": bool(roots_ok),
            }
        )
    return out
