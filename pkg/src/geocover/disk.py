"""Geodesic unit disks: membership, explicit boundary, intersections.

A disk boundary is made of circular arcs around anchors (the center, or a
reflex vertex at geodesic distance d < 1 carrying an arc of radius 1 - d)
plus the stretches of polygon boundary the disk swallows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .geometry import Point2, SimplePolygon, dist, inside_tol, lerp
from .shortest_path import geodesic_distance, shortest_path_tree

TOL = 1e-9
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DiskArc:
    """Counterclockwise arc of circle(anchor, radius) from theta0 to theta1."""

    anchor: tuple[float, float]
    radius: float
    theta0: float
    theta1: float

    def point(self, theta: float) -> tuple[float, float]:
        return (
            self.anchor[0] + self.radius * math.cos(theta),
            self.anchor[1] + self.radius * math.sin(theta),
        )

    @property
    def endpoints(self):
        return self.point(self.theta0), self.point(self.theta1)

    def contains_angle(self, theta: float) -> bool:
        d = (theta - self.theta0) % TWO_PI
        return d <= self.theta1 - self.theta0 + 1e-15

    def flatten(self, sagitta: float = 1e-3) -> list[tuple[float, float]]:
        span = self.theta1 - self.theta0
        if self.radius <= sagitta:
            k = 2
        else:
            step = 2.0 * math.acos(max(-1.0, 1.0 - sagitta / self.radius))
            k = max(2, int(math.ceil(span / step)) + 1)
        return [self.point(self.theta0 + span * i / (k - 1)) for i in range(k)]


@dataclass(frozen=True)
class BoundaryPiece:
    """Part of polygon edge ``edge_index`` between parameters t0 <= t1."""

    edge_index: int
    t0: float
    t1: float
    p0: tuple[float, float]
    p1: tuple[float, float]

    @property
    def endpoints(self):
        return self.p0, self.p1


DiskPiece = Union[DiskArc, BoundaryPiece]


@dataclass(frozen=True)
class GeodesicDisk:
    center: Point2
    pieces: tuple[DiskPiece, ...]

    @property
    def arcs(self) -> list[DiskArc]:
        return [p for p in self.pieces if isinstance(p, DiskArc)]

    @property
    def boundary_pieces(self) -> list[BoundaryPiece]:
        return [p for p in self.pieces if isinstance(p, BoundaryPiece)]

    def contains(self, pts) -> np.ndarray:
        """Even-odd ray casting against the explicit piece structure."""
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        x, y = pts[:, 0], pts[:, 1]
        count = np.zeros(len(pts), dtype=int)
        for pc in self.pieces:
            if isinstance(pc, BoundaryPiece):
                (ax, ay), (bx, by) = pc.p0, pc.p1
                straddle = (ay > y) != (by > y)
                with np.errstate(divide="ignore", invalid="ignore"):
                    xi = ax + (y - ay) * (bx - ax) / (by - ay)
                count += straddle & (x < xi)
            else:
                count += _arc_ray_hits(pc, x, y)
        return (count % 2) == 1

    def polyline(self, sagitta: float = 1e-3) -> list[list[tuple[float, float]]]:
        out = []
        for pc in self.pieces:
            if isinstance(pc, DiskArc):
                out.append(pc.flatten(sagitta))
            else:
                out.append([pc.p0, pc.p1])
        return out


def _arc_ray_hits(arc: DiskArc, x, y) -> np.ndarray:
    """Crossings of rightward rays from (x, y) with the arc (half-open in y)."""
    ax, ay = arc.anchor
    r = arc.radius
    dy = y - ay
    inside = np.abs(dy) < r
    h = np.sqrt(np.maximum(r * r - dy * dy, 0.0))
    hits = np.zeros(len(x), dtype=int)
    # endpoint heights: count an intersection when the arc locally crosses
    # the horizontal line, using a half-open rule on the arc's y-range
    for sign in (1.0, -1.0):
        xi = ax + sign * h
        theta = np.arctan2(dy, sign * h)
        rel = np.mod(theta - arc.theta0, TWO_PI)
        on_arc = rel <= (arc.theta1 - arc.theta0)
        # half-open: ignore the top point of the circle so tangency is not counted twice
        ok = inside & on_arc & (x < xi)
        hits += ok
    return hits


def disk_contains(P: SimplePolygon, center, p) -> bool:
    return geodesic_distance(P, center, p) <= 1.0 + 1e-12


@dataclass(frozen=True)
class IntersectionRegion:
    """Intersection of the unit disks at ``centers`` (kept implicit)."""

    centers: tuple[tuple[float, float], ...]

    def max_distance(self, P: SimplePolygon, p) -> float:
        return max(geodesic_distance(P, c, p) for c in self.centers)


def region_contains(P: SimplePolygon, region, p, tol: float = TOL) -> bool:
    centers = region.centers if isinstance(region, IntersectionRegion) else region
    for c in centers:
        if geodesic_distance(P, c, p) > 1.0 + tol:
            return False
    return True


def disk_anchors(P: SimplePolygon, center) -> list[tuple[tuple[float, float], float, int]]:
    """(anchor, residual radius, vertex id or -1) for every arc-carrying anchor."""
    center = (float(center[0]), float(center[1]))
    out = [(center, 1.0, -1)]
    for i, v in enumerate(P.vertices):
        # geodesic >= Euclidean, so farther reflex vertices cannot anchor an arc
        if not P.reflex[i] or dist(center, v) >= 1.0:
            continue
        d = geodesic_distance(P, center, v)
        if d >= 1.0 or d <= 0.0:
            continue
        out.append((v, 1.0 - d, i))
    return out


def _circle_segment_angles(a, r, p, q) -> list[float]:
    dx, dy = q[0] - p[0], q[1] - p[1]
    fx, fy = p[0] - a[0], p[1] - a[1]
    A = dx * dx + dy * dy
    B = 2 * (fx * dx + fy * dy)
    C = fx * fx + fy * fy - r * r
    disc = B * B - 4 * A * C
    if disc < 0 or A == 0:
        return []
    sq = math.sqrt(disc)
    out = []
    for t in ((-B - sq) / (2 * A), (-B + sq) / (2 * A)):
        if -1e-12 <= t <= 1 + 1e-12:
            x, y = p[0] + t * dx, p[1] + t * dy
            out.append(math.atan2(y - a[1], x - a[0]) % TWO_PI)
    return out


def disk_boundary(P: SimplePolygon, center) -> GeodesicDisk:
    center = (float(center[0]), float(center[1]))
    if not inside_tol(P, center):
        from .errors import PointOutsidePolygon

        raise PointOutsidePolygon(f"point {center} is outside the polygon")
    engine = P.engine
    tree = shortest_path_tree(P, center)
    pieces: list[DiskPiece] = []
    for anchor, r, vid in disk_anchors(P, center):
        base = 1.0 - r
        cuts = []
        for i in range(P.n):
            p, q = P.edge(i)
            cuts += _circle_segment_angles(anchor, r, p, q)
        # window rays: extension of the tree edge into the anchor and rays to
        # vertices hanging off it
        if vid >= 0:
            par = tree.parent[vid]
            src = center if par < 0 else P.vertices[par]
            cuts.append(math.atan2(anchor[1] - src[1], anchor[0] - src[0]) % TWO_PI)
        for w in range(P.n):
            if w == vid:
                continue
            pw = tree.parent[w]
            if (vid < 0 and pw < 0) or (vid >= 0 and pw == vid):
                wv = P.vertices[w]
                if wv != anchor:
                    cuts.append(math.atan2(wv[1] - anchor[1], wv[0] - anchor[0]) % TWO_PI)
        cuts = sorted(set(round(c, 15) for c in cuts))
        if not cuts:
            cuts = [0.0]
        good = []
        for k, th0 in enumerate(cuts):
            th1 = cuts[k + 1] if k + 1 < len(cuts) else cuts[0] + TWO_PI
            if th1 - th0 <= 1e-13:
                continue
            mid = 0.5 * (th0 + th1)
            m = (anchor[0] + r * math.cos(mid), anchor[1] + r * math.sin(mid))
            if not inside_tol(P, m, 0.0):
                continue
            if abs(geodesic_distance(P, center, m) - 1.0) <= 1e-9:
                good.append((th0, th1))
        # merge neighbouring intervals, joining across the wrap at cuts[0]
        merged: list[list[float]] = []
        for th0, th1 in good:
            if merged and th0 - merged[-1][1] < 1e-13:
                merged[-1][1] = th1
            else:
                merged.append([th0, th1])
        if len(merged) > 1 and merged[0][0] == cuts[0] and merged[-1][1] >= cuts[0] + TWO_PI - 1e-13:
            last = merged.pop()
            merged[0] = [last[0], merged[0][1] + TWO_PI]
        if len(merged) == 1 and merged[0][1] - merged[0][0] >= TWO_PI - 1e-12:
            merged[0] = [0.0, TWO_PI]
        for iv in merged:
            shift = math.floor(iv[0] / TWO_PI) * TWO_PI
            iv[0] -= shift
            iv[1] -= shift
        for th0, th1 in merged:
            pieces.append(DiskArc(anchor, r, th0, th1))
    for i in range(P.n):
        p, q = P.edge(i)
        prof = engine.profile(center, p, q, check=False)
        iv = prof.sublevel(1.0)
        if iv is None or iv[1] - iv[0] <= 0.0:
            continue
        pieces.append(BoundaryPiece(i, iv[0], iv[1], lerp(p, q, iv[0]), lerp(p, q, iv[1])))
    return GeodesicDisk(Point2(*center), tuple(_chain(pieces)))


def _chain(pieces: list) -> list:
    """Order pieces so consecutive ones share endpoints (best effort)."""
    if len(pieces) <= 2:
        return pieces
    left = list(pieces)
    out = [left.pop(0)]
    cur = out[0].endpoints[1]
    while left:
        best = min(
            range(len(left)),
            key=lambda k: min(dist(cur, left[k].endpoints[0]), dist(cur, left[k].endpoints[1])),
        )
        pc = left.pop(best)
        e0, e1 = pc.endpoints
        cur = e1 if dist(cur, e0) <= dist(cur, e1) else e0
        out.append(pc)
    return out


@dataclass(frozen=True)
class IntersectionPoint:
    point: tuple[float, float]
    pair: tuple[int, int]


def disk_disk_intersections(P: SimplePolygon, region, tol: float = TOL) -> list[IntersectionPoint]:
    """Points at distance exactly 1 from two centers and at most 1 from all."""
    centers = list(region.centers if isinstance(region, IntersectionRegion) else region)
    m = len(centers)
    if m < 2:
        return []
    anchors = [disk_anchors(P, c) for c in centers]
    found: list[IntersectionPoint] = []
    for i in range(m):
        for j in range(i + 1, m):
            if dist(centers[i], centers[j]) > 2.0 + 1e-9:
                continue
            for a, ra, _ in anchors[i]:
                for b, rb, _ in anchors[j]:
                    for x in _circle_circle(a, ra, b, rb):
                        # cheap Euclidean screen: geodesic >= Euclidean
                        if any(dist(c, x) > 1.0 + tol for c in centers):
                            continue
                        if not inside_tol(P, x, 1e-9):
                            continue
                        if abs(geodesic_distance(P, centers[i], x) - 1.0) > tol:
                            continue
                        if abs(geodesic_distance(P, centers[j], x) - 1.0) > tol:
                            continue
                        if any(
                            geodesic_distance(P, centers[k], x) > 1.0 + tol
                            for k in range(m)
                            if k != i and k != j
                        ):
                            continue
                        if any(dist(x, f.point) <= 1e-9 for f in found):
                            continue
                        found.append(IntersectionPoint(x, (i, j)))
    return found


def _circle_circle(a, ra, b, rb) -> list[tuple[float, float]]:
    d = dist(a, b)
    if d == 0.0 or d > ra + rb or d < abs(ra - rb):
        return []
    l = (ra * ra - rb * rb + d * d) / (2 * d)
    h2 = ra * ra - l * l
    h = math.sqrt(max(h2, 0.0))
    ux, uy = (b[0] - a[0]) / d, (b[1] - a[1]) / d
    mx, my = a[0] + l * ux, a[1] + l * uy
    if h == 0.0:
        return [(mx, my)]
    return [(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)]
