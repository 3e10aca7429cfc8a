"""Contiguous greedy cover of a polygon boundary by geodesic unit disks.

Starting at a vertex, the covered prefix of the boundary is extended
clockwise, each time by the longest stretch a single disk can cover:

* stretches of a long edge are eaten in steps of 2;
* otherwise exponential + binary search over the single-disk test finds the
  first vertex ``v_u`` that cannot join, and the extension onto the edge
  ``v_{u-1} v_u`` is computed exactly from distance profiles, either from a
  point at distance 2 from the farthest committed site (branch ``x1``) or
  at distance 1 from a disk-disk intersection point (branch ``x2``).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .center import COVER_TOL, geodesic_center
from .disk import IntersectionRegion, disk_disk_intersections, region_contains
from .errors import AllCoverable, NumericalCertificationFailure
from .geometry import BoundaryPoint, Point2, SimplePolygon, dist, lerp
from .shortest_path import geodesic_distance, shortest_path

log = logging.getLogger(__name__)

ROOT_TOL = 1e-9


@dataclass
class IterationRecord:
    kind: str  # "long", "augment" or "final"
    c_before: BoundaryPoint
    c_after: BoundaryPoint | None
    centers: list
    u: int | None = None  # polygon vertex index of the first uncoverable vertex
    branch: str | None = None  # "x1" or "x2" for augment steps
    q_size: int = 0
    probes: list = field(default_factory=list)  # (polygon vertex, test result)
    f2_roots: list = field(default_factory=list)  # points on e where F = 2
    certificate: dict = field(default_factory=dict)
    covered_before: float = 0.0
    covered_after: float = 0.0


@dataclass
class CoverState:
    c: BoundaryPoint
    covered_length: float
    centers: list
    iteration_trace: list


@dataclass
class CoverSolution:
    centers: list
    k: int
    sum_Q: int
    start_vertex: int
    trace: list = field(default_factory=list)

    @property
    def sum_q(self) -> int:
        return self.sum_Q


class _Walk:
    """Boundary walk unwrapped from the start vertex: w_0 .. w_n (= w_0)."""

    def __init__(self, P: SimplePolygon, start: int):
        self.P = P
        self.s = start % P.n
        self.n = P.n
        self.L = P.perimeter
        self.prefix = [0.0]
        for k in range(self.n):
            self.prefix.append(self.prefix[-1] + P.edge_lengths[self.vid(k)])

    def vid(self, k: int) -> int:
        return (self.s + k) % self.n

    def w(self, k: int):
        return self.P.vertices[self.vid(k)]

    def bp(self, j: int, t: float) -> BoundaryPoint:
        if t >= 1.0:
            j, t = j + 1, 0.0
        return self.P.boundary_point(self.vid(j), t)

    def pos(self, j: int, t: float) -> float:
        """Arc length from the start vertex."""
        return self.prefix[j] + t * self.P.edge_lengths[self.vid(j)] if j < self.n else self.L


class ContiguousGreedy:
    def __init__(self, P: SimplePolygon, start_vertex: int = 0, check_monotone: bool = True):
        self.P = P
        self.walk = _Walk(P, start_vertex)
        self.check_monotone = check_monotone
        self.sum_Q = 0
        self.trace: list[IterationRecord] = []
        self.centers: list[Point2] = []

    # -- single-disk predicate ------------------------------------------
    def sites(self, cpt, j: int, v: int) -> list:
        """U: c followed by unwrapped vertices j+1 .. v."""
        out = [tuple(cpt)]
        for k in range(j + 1, v + 1):
            w = self.walk.w(k)
            if w != out[-1]:
                out.append(w)
        return out

    def q_size(self, cpt, j: int, v: int) -> int:
        """|Q| for Q = boundary(c, v) followed by the geodesic back to c."""
        path = shortest_path(self.P, self.walk.w(v), cpt)
        return (v - j + 1) + max(0, len(path.points) - 2)

    def test(self, cpt, j: int, v: int) -> bool:
        self.sum_Q += self.q_size(cpt, j, v)
        res = geodesic_center(self.P, self.sites(cpt, j, v))
        return res.radius <= 1.0 + COVER_TOL

    # -- step 1 ------------------------------------------------------------
    def cover_long_segment(self, j: int, t: float):
        """Centers at odd offsets along the rest of edge j while it is longer than 2."""
        a, b = self.walk.w(j), self.walk.w(j + 1)
        elen = dist(a, b)
        d = (1.0 - t) * elen
        if d <= 2.0:
            return j, t, []
        m = math.ceil(d / 2.0) - 1
        out = []
        for k in range(1, m + 1):
            out.append(Point2(*lerp(a, b, t + (2 * k - 1) / elen)))
        t_new = t + 2.0 * m / elen
        return j, t_new, out

    # -- step 2 ------------------------------------------------------------
    def find_first_uncoverable(self, cpt, j: int):
        """Smallest unwrapped index u with the single-disk test failing.

        Raises AllCoverable when the test still holds at the wrap-around vertex.
        """
        n = self.walk.n
        i = j + 1
        probes = [(i, True)]  # |c w_i| <= 2 makes this one free
        if i >= n:
            raise AllCoverable(probes)
        lo = i
        hi = None
        off = 1
        while True:
            v = min(i + off, n)
            ok = self.test(cpt, j, v)
            probes.append((v, ok))
            if ok:
                lo = v
                if v >= n:
                    raise AllCoverable(probes)
            else:
                hi = v
                break
            off *= 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            ok = self.test(cpt, j, mid)
            probes.append((mid, ok))
            if ok:
                lo = mid
            else:
                hi = mid
        if self.check_monotone:
            _assert_monotone(probes)
        return hi, probes

    # -- step 3 ------------------------------------------------------------
    def augment_short(self, cpt, j: int, u: int):
        P = self.P
        engine = P.engine
        ubar = self.sites(cpt, j, u - 1)
        p0, p1 = self.walk.w(u - 1), self.walk.w(u)
        elen = dist(p0, p1)
        profiles = [engine.profile(q, p0, p1, check=False) for q in ubar]

        def F(t):
            return max(pr(t) for pr in profiles)

        # roots of F = 2 along e, from closed-form per-piece quadratics
        roots = []
        for qi, pr in enumerate(profiles):
            for t in _level_roots(pr, 2.0):
                if F(t) <= 2.0 + 1e-9:
                    roots.append((t, qi))
        roots.sort()
        uniq = []
        for t, qi in roots:
            if not uniq or (t - uniq[-1][0]) * elen > ROOT_TOL:
                uniq.append((t, qi))
        cert: dict = {"F_roots": [t for t, _ in uniq], "sites": list(ubar), "v_prev": p0, "v_u": p1}

        x1 = None
        if uniq:
            t, qi = uniq[-1]
            x = lerp(p0, p1, t)
            q = ubar[qi]
            mid = shortest_path(P, q, x).point_at_distance(1.0)
            if region_contains(P, ubar, mid, tol=ROOT_TOL):
                x1 = (t, mid, q)
            else:
                cert["x1_outside_A"] = t
        if x1 is None and abs(F(0.0) - 2.0) <= ROOT_TOL:
            q = max(ubar, key=lambda s: geodesic_distance(P, s, p0))
            mid = shortest_path(P, q, p0).point_at_distance(1.0)
            x1 = (0.0, mid, q)

        I = disk_disk_intersections(P, IntersectionRegion(tuple(ubar)))
        cert["I"] = [ip.point for ip in I]
        x2 = None
        for ip in I:
            pr = engine.profile(ip.point, p0, p1, check=False)
            iv = pr.sublevel(1.0)
            if iv is None:
                continue
            if x2 is None or iv[1] > x2[0]:
                x2 = (iv[1], ip.point)

        if x2 is not None and (x1 is None or (x2[0] - x1[0]) * elen > 1e-12):
            t_new, center = x2
            branch = "x2"
            q = None
        elif x1 is not None:
            t_new, center, q = x1
            branch = "x1"
        else:
            raise NumericalCertificationFailure(
                f"no extension point on edge {self.walk.vid(u - 1)}->{self.walk.vid(u)}"
            )
        cert.update({"t": t_new, "q": q, "x1": x1[0] if x1 else None, "x2": x2[0] if x2 else None})
        f2_points = [lerp(p0, p1, t) for t, _ in uniq]
        return t_new, Point2(*center), branch, f2_points, cert, ubar

    # -- main loop -------------------------------------------------------
    def run(self) -> CoverSolution:
        walk = self.walk
        L = walk.L
        n = walk.n
        j, t = 0, 0.0
        covered = 0.0
        guard = 0
        while covered < L - 1e-12:
            guard += 1
            if guard > 10 * n + 10 + int(L):
                raise NumericalCertificationFailure("greedy loop failed to make progress")
            # step 1: long remainder of the current edge
            j2, t2, long_centers = self.cover_long_segment(j, t)
            if long_centers:
                before = walk.bp(j, t)
                for k, cc in enumerate(long_centers):
                    tb = t + (2 * k) / dist(walk.w(j), walk.w(j + 1))
                    ta = t + (2 * k + 2) / dist(walk.w(j), walk.w(j + 1))
                    self.trace.append(
                        IterationRecord(
                            "long",
                            walk.bp(j, tb),
                            walk.bp(j, ta),
                            [cc],
                            covered_before=walk.pos(j, tb),
                            covered_after=walk.pos(j, ta),
                        )
                    )
                self.centers += long_centers
                j, t = j2, t2
                covered = walk.pos(j, t)
            cpt = lerp(walk.w(j), walk.w(j + 1), t)
            before = walk.bp(j, t)
            # step 2
            try:
                u, probes = self.find_first_uncoverable(cpt, j)
            except AllCoverable as exc:
                sites = self.sites(cpt, j, n)
                res = geodesic_center(self.P, sites)
                self.sum_Q += self.q_size(cpt, j, n)
                self.centers.append(res.center)
                self.trace.append(
                    IterationRecord(
                        "final",
                        before,
                        None,
                        [res.center],
                        probes=[(walk.vid(v), ok) for v, ok in exc.args[0]],
                        covered_before=covered,
                        covered_after=L,
                    )
                )
                covered = L
                break
            # step 3
            qs = self.q_size(cpt, j, u)
            self.sum_Q += qs
            t_new, center, branch, f2, cert, ubar = self.augment_short(cpt, j, u)
            jn, tn = u - 1, t_new
            if tn >= 1.0:
                raise NumericalCertificationFailure("extension reached the uncoverable vertex")
            new_cov = walk.pos(jn, tn)
            if new_cov <= covered + 1e-12:
                raise NumericalCertificationFailure("greedy extension did not advance")
            self.centers.append(center)
            self.trace.append(
                IterationRecord(
                    "augment",
                    before,
                    walk.bp(jn, tn),
                    [center],
                    u=walk.vid(u),
                    branch=branch,
                    q_size=qs,
                    probes=[(walk.vid(v), ok) for v, ok in probes],
                    f2_roots=f2,
                    certificate=cert,
                    covered_before=covered,
                    covered_after=new_cov,
                )
            )
            j, t = jn, tn
            covered = new_cov
        return CoverSolution(list(self.centers), len(self.centers), self.sum_Q, walk.s, self.trace)


def _level_roots(profile, level: float) -> list[float]:
    """All t where the profile equals ``level`` (piecewise quadratic roots)."""
    from .shortest_path import circle_line_roots

    out = []
    for pc in profile.pieces:
        r = level - pc.base
        if r < 0:
            continue
        for t in circle_line_roots(profile.p0, profile.p1, pc.anchor, r):
            if pc.t0 - 1e-12 <= t <= pc.t1 + 1e-12:
                out.append(min(max(t, 0.0), 1.0))
    return sorted(out)


def _assert_monotone(probes):
    seen_false = None
    for v, ok in sorted(probes):
        if not ok:
            seen_false = v if seen_false is None else min(seen_false, v)
        elif seen_false is not None and v > seen_false:
            raise NumericalCertificationFailure(f"cover test not monotone: true at {v} after false at {seen_false}")


def cover_long_segment(P: SimplePolygon, state: CoverState) -> CoverState:
    """Apply the step-2 rule to the edge holding ``state.c``."""
    c = state.c
    g = ContiguousGreedy(P, c.edge_index)
    j2, t2, centers = g.cover_long_segment(0, c.t)
    nc = g.walk.bp(j2, t2)
    adv = (t2 - c.t) * P.edge_lengths[c.edge_index]
    return CoverState(nc, state.covered_length + adv, list(state.centers) + centers, list(state.iteration_trace))


def find_first_uncoverable(P: SimplePolygon, c: BoundaryPoint, i: int | None = None):
    """Polygon index of the first vertex after ``c`` that cannot share a disk with
    the boundary from ``c``; raises AllCoverable when none exists before wrapping."""
    g = ContiguousGreedy(P, c.edge_index)
    u, probes = g.find_first_uncoverable(c.xy, 0)
    return g.walk.vid(u), [(g.walk.vid(v), ok) for v, ok in probes]


def augment_short(P: SimplePolygon, c: BoundaryPoint, u: int):
    """(c', center, branch) for the maximal extension past vertex ``u - 1``."""
    g = ContiguousGreedy(P, c.edge_index)
    uu = (u - c.edge_index) % P.n
    if uu == 0:
        uu = P.n
    t_new, center, branch, _, _, _ = g.augment_short(c.xy, 0, uu)
    return g.walk.bp(uu - 1, t_new), center, branch


def contiguous_greedy(P: SimplePolygon, start_vertex: int = 0) -> CoverSolution:
    return ContiguousGreedy(P, start_vertex).run()
