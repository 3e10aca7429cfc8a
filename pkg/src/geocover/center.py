"""Geodesic 1-center of a point set and the single-disk cover test.

The minimax point of finitely many sites is fixed by at most three of
them, so the solver keeps a basis of <= 3 sites, adds the farthest
violator, and re-solves the <= 4 site problem by trying every single,
pair (midpoint of the geodesic) and triple (geodesic circumcenter).
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import NumericalCertificationFailure, PointOutsidePolygon
from .geometry import BoundaryPoint, Point2, SimplePolygon, dist, inside_tol
from .shortest_path import geodesic_distance, last_anchor, shortest_path

log = logging.getLogger(__name__)

COVER_TOL = 1e-9
_FEAS = 1e-12


@dataclass(frozen=True)
class CenterResult:
    center: Point2
    radius: float
    determiners: tuple[Point2, ...]


def _key(p):
    return (float(p[0]), float(p[1]))


def _radius(P, x, sites) -> float:
    return max(geodesic_distance(P, x, s) for s in sites)


def _anchor_from(P, site, x):
    """Anchor of ``site`` as seen from ``x`` and the site's distance to it."""
    path = shortest_path(P, site, x)
    return last_anchor(path)


def _apollonius(anchors):
    """Points x, radius R with base_i + |x - A_i| = R for three anchors.

    Pairwise differences give two equations linear in (x, R); substituting
    back into one circle leaves a quadratic in R.
    """
    (A, a), (B, b), (C, c) = anchors
    rows = []
    rhs0 = []
    rhs1 = []
    for (Q, q) in ((B, b), (C, c)):
        # |x-Q|^2 - |x-A|^2 = (R-q)^2 - (R-a)^2
        # -2(Q-A).x + |Q|^2 - |A|^2 = (a - q)(2R - a - q)
        rows.append([-2 * (Q[0] - A[0]), -2 * (Q[1] - A[1])])
        k = (Q[0] ** 2 + Q[1] ** 2) - (A[0] ** 2 + A[1] ** 2)
        rhs0.append(-(a - q) * (a + q) - k)
        rhs1.append(2 * (a - q))
    M = np.array(rows)
    if abs(np.linalg.det(M)) < 1e-18:
        return []
    x0 = np.linalg.solve(M, rhs0)
    x1 = np.linalg.solve(M, rhs1)
    # |x0 + R x1 - A|^2 = (R - a)^2
    d0 = x0 - np.asarray(A)
    qa = x1 @ x1 - 1.0
    qb = 2 * (d0 @ x1) + 2 * a
    qc = d0 @ d0 - a * a
    roots = []
    if abs(qa) < 1e-14:
        if abs(qb) > 1e-300:
            roots = [-qc / qb]
    else:
        disc = qb * qb - 4 * qa * qc
        if disc < 0:
            if disc > -1e-12 * max(1.0, qb * qb):
                disc = 0.0
            else:
                return []
        sq = math.sqrt(disc)
        roots = [(-qb - sq) / (2 * qa), (-qb + sq) / (2 * qa)]
    out = []
    for R in roots:
        if R + 1e-12 < max(a, b, c):
            continue
        x = x0 + R * x1
        out.append(((float(x[0]), float(x[1])), float(R)))
    return out


def _triple_center(P, sites, start):
    """Geodesic circumcenter of three sites by anchor-fixed-point iteration."""
    x = start
    for _ in range(60):
        anchors = [_anchor_from(P, s, x) for s in sites]
        sols = [
            (y, R)
            for y, R in _apollonius(anchors)
            if inside_tol(P, y, 1e-9 * P.scale)
        ]
        if not sols:
            return None
        y, R = min(sols, key=lambda yr: (dist(yr[0], x), yr[1]))
        if dist(x, y) <= 1e-14 * P.scale:
            x = y
            break
        x = y
    ds = [geodesic_distance(P, x, s) for s in sites]
    if max(ds) - min(ds) > 1e-10:
        return None
    return x, max(ds)


def _optimality_gap(P, x, sites, radius) -> bool:
    """KKT check: unit directions away from the active anchors are not all
    contained in an open half-plane (so no direction decreases the max)."""
    dirs = []
    for s in sites:
        d = geodesic_distance(P, x, s)
        if d < radius - 1e-9:
            continue
        a, _ = _anchor_from(P, s, x)
        v = (x[0] - a[0], x[1] - a[1])
        nv = math.hypot(*v)
        if nv == 0.0:
            return True
        dirs.append((v[0] / nv, v[1] / nv))
    if len(dirs) < 2:
        return len(dirs) == 0 or radius == 0.0
    angs = sorted(math.atan2(v[1], v[0]) for v in dirs)
    gaps = [b - a for a, b in zip(angs, angs[1:])] + [angs[0] + 2 * math.pi - angs[-1]]
    # 0 in the convex hull of the directions iff the largest angular gap <= pi
    return max(gaps) <= math.pi + 1e-7


def _solve_small(P, S):
    """Minimax point of at most four sites."""
    best = None

    def consider(x, det):
        nonlocal best
        R = _radius(P, x, S)
        if best is None or R < best[1] - 1e-15:
            best = (x, R, det)

    for a, b in itertools.combinations(S, 2):
        path = shortest_path(P, a, b)
        m = path.point_at_distance(0.5 * path.length)
        R = 0.5 * path.length
        if _radius(P, m, S) <= R + _FEAS:
            consider(m, (a, b))
    if len(S) == 1:
        consider(S[0], (S[0],))
    # a feasible pair midpoint meets the d(a, b) / 2 lower bound, so it is optimal
    if best is None:
        for tri in itertools.combinations(S, 3):
            start = (
                sum(p[0] for p in tri) / 3.0,
                sum(p[1] for p in tri) / 3.0,
            )
            if not inside_tol(P, start):
                path = shortest_path(P, tri[0], tri[1])
                start = path.point_at_distance(0.5 * path.length)
            res = _triple_center(P, tri, start)
            if res is None:
                continue
            x, R = res
            if _radius(P, x, S) <= R + _FEAS:
                consider(x, tri)
    return best


def _descent(P, sites, x0):
    """Derivative-free refinement of the max-distance function over P."""
    sc = P.scale

    def g(z):
        p = (float(z[0]), float(z[1]))
        if not inside_tol(P, p):
            from .geometry import distance_to_boundary

            return 1e3 * sc + distance_to_boundary(P, p)
        return _radius(P, p, sites)

    res = minimize(
        g,
        np.asarray(x0, dtype=float),
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000, "initial_simplex": None},
    )
    p = (float(res.x[0]), float(res.x[1]))
    if not inside_tol(P, p):
        return None
    return p, _radius(P, p, sites)


def geodesic_center(P: SimplePolygon, sites: Sequence) -> CenterResult:
    pts = []
    seen = set()
    for s in sites:
        k = _key(s)
        if k not in seen:
            seen.add(k)
            pts.append(k)
    if not pts:
        raise ValueError("need at least one site")
    for p in pts:
        if not inside_tol(P, p):
            raise PointOutsidePolygon(f"site {p} is outside the polygon")
    if len(pts) == 1:
        return CenterResult(Point2(*pts[0]), 0.0, (Point2(*pts[0]),))
    basis = [pts[0]]
    x, R, det = pts[0], 0.0, (pts[0],)
    for _ in range(10 * len(pts) + 20):
        far, fd = None, R
        for s in pts:
            d = geodesic_distance(P, x, s)
            if d > fd + 1e-12 * max(1.0, R):
                far, fd = s, d
        if far is None:
            break
        sol = _solve_small(P, basis + [far])
        if sol is None:
            break
        x, R, det = sol
        basis = list(det)
    else:
        raise NumericalCertificationFailure("1-center basis iteration did not settle")
    R = _radius(P, x, pts)
    if not _optimality_gap(P, x, det, R):
        log.debug("1-center optimality check failed at %s, refining", x)
        ref = _descent(P, pts, x)
        if ref is not None and ref[1] < R:
            x, R = ref
        if not _optimality_gap(P, x, pts, R) and ref is None:
            raise NumericalCertificationFailure("could not certify geodesic 1-center")
    dets = tuple(Point2(*s) for s in pts if abs(geodesic_distance(P, x, s) - R) <= 1e-9)
    return CenterResult(Point2(*x), R, dets[:3] if dets else tuple(Point2(*s) for s in det))


def cover_sites(P: SimplePolygon, c, v) -> list[tuple[float, float]]:
    """U(c, v): ``c`` followed by the vertices clockwise after it through ``v``."""
    if isinstance(c, BoundaryPoint):
        first = c.edge_index + 1 if c.t > 0.0 else c.edge_index
        cpt = c.xy
    else:
        raise TypeError("c must be a BoundaryPoint")
    n = P.n
    out = [tuple(cpt)]
    i = first
    for _ in range(n):
        w = P.vertices[i % n]
        if w != out[-1]:
            out.append(w)
        if i % n == v % n:
            break
        i += 1
    return out


def test_cover(P: SimplePolygon, c: BoundaryPoint, v: int) -> bool:
    return geodesic_center(P, cover_sites(P, c, v)).radius <= 1.0 + COVER_TOL


test_cover.__test__ = False  # keep pytest from collecting it
