"""Polygon representation, boundary parameterization and robust predicates.

Polygons are stored clockwise, so the clockwise boundary walk used by the
covering algorithms is simply increasing vertex index.  Boundary positions
are measured by arc length from vertex 0.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DuplicateVertex,
    SelfIntersecting,
    TooFewVertices,
    ZeroArea,
)

# Shewchuk's static filter for the 2x2 orientation determinant.
_CCW_ERRBOUND = (3.0 + 16.0 * 2.0 ** -53) * 2.0 ** -53


class Point2(NamedTuple):
    x: float
    y: float


def orient(a, b, c) -> int:
    """Sign of the signed area of triangle ``abc`` (+1 counterclockwise).

    A floating point filter decides the easy cases; anything inside the
    error bound is re-evaluated exactly with rationals.
    """
    detleft = (b[0] - a[0]) * (c[1] - a[1])
    detright = (b[1] - a[1]) * (c[0] - a[0])
    det = detleft - detright
    bound = _CCW_ERRBOUND * (abs(detleft) + abs(detright))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    if a == b or a == c or b == c:
        return 0
    ax, ay = Fraction(a[0]), Fraction(a[1])
    exact = (Fraction(b[0]) - ax) * (Fraction(c[1]) - ay) - (Fraction(b[1]) - ay) * (
        Fraction(c[0]) - ax
    )
    return (exact > 0) - (exact < 0)


def cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def lerp(a, b, t: float) -> tuple[float, float]:
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def signed_area(vertices: Sequence) -> float:
    s = 0.0
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def on_segment(p, a, b) -> bool:
    """True if ``p`` lies on the closed segment ``ab`` (exact)."""
    if orient(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a, b, c, d) -> bool:
    """Closed-segment intersection test, including touching and overlap."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and on_segment(c, a, b):
        return True
    if o2 == 0 and on_segment(d, a, b):
        return True
    if o3 == 0 and on_segment(a, c, d):
        return True
    if o4 == 0 and on_segment(b, c, d):
        return True
    return False


def segments_cross_properly(a, b, c, d) -> bool:
    return orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0


def point_in_polygon(vertices: Sequence, p) -> int:
    """Return 1 if ``p`` is strictly inside, 0 on the boundary, -1 outside."""
    n = len(vertices)
    wn = 0
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        if on_segment(p, a, b):
            return 0
        if a[1] <= p[1]:
            if b[1] > p[1] and orient(a, b, p) > 0:
                wn += 1
        elif b[1] <= p[1] and orient(a, b, p) < 0:
            wn -= 1
    return 1 if wn != 0 else -1


def points_in_polygon(vertices: Sequence, pts) -> np.ndarray:
    """Vectorised even-odd test; boundary points may go either way."""
    v = np.asarray(vertices, dtype=float)
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    x, y = pts[:, 0][:, None], pts[:, 1][:, None]
    ax, ay = v[:, 0][None, :], v[:, 1][None, :]
    bx, by = np.roll(v[:, 0], -1)[None, :], np.roll(v[:, 1], -1)[None, :]
    straddle = (ay > y) != (by > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xint = ax + (y - ay) * (bx - ax) / (by - ay)
    hits = straddle & (x < xint)
    return (np.count_nonzero(hits, axis=1) % 2) == 1


@dataclass(frozen=True)
class BoundaryPoint:
    edge_index: int
    t: float
    s: float
    xy: tuple[float, float]

    @property
    def point(self) -> Point2:
        return Point2(*self.xy)


@dataclass(frozen=True)
class BoundaryArc:
    start: BoundaryPoint
    end: BoundaryPoint
    length: float


@dataclass(frozen=True, eq=False)
class SimplePolygon:
    """Validated clockwise simple polygon.  Build with :func:`validate_polygon`."""

    vertices: tuple[tuple[float, float], ...]
    edge_lengths: tuple[float, ...] = field(repr=False)
    cumulative_arclength: tuple[float, ...] = field(repr=False)
    perimeter: float = 0.0

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> tuple[float, float]:
        return self.vertices[i % self.n]

    def edge(self, i: int) -> tuple[tuple[float, float], tuple[float, float]]:
        return self.vertices[i % self.n], self.vertices[(i + 1) % self.n]

    @cached_property
    def reflex(self) -> tuple[bool, ...]:
        n = self.n
        v = self.vertices
        # clockwise order: a left turn is a reflex corner
        return tuple(orient(v[i - 1], v[i], v[(i + 1) % n]) > 0 for i in range(n))

    @cached_property
    def is_convex(self) -> bool:
        return not any(self.reflex)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)

    @cached_property
    def edge_vectors(self) -> tuple[np.ndarray, np.ndarray]:
        """Edge directions and their squared lengths, as arrays."""
        e = np.roll(self.array, -1, axis=0) - self.array
        return e, (e ** 2).sum(axis=1)

    @cached_property
    def bbox(self) -> tuple[float, float, float, float]:
        a = self.array
        return float(a[:, 0].min()), float(a[:, 1].min()), float(a[:, 0].max()), float(a[:, 1].max())

    @cached_property
    def scale(self) -> float:
        x0, y0, x1, y1 = self.bbox
        return max(x1 - x0, y1 - y0, 1.0)

    @cached_property
    def area(self) -> float:
        return -signed_area(self.vertices)

    def contains(self, p) -> bool:
        return point_in_polygon(self.vertices, p) >= 0

    def boundary_point(self, edge_index: int, t: float) -> BoundaryPoint:
        i = edge_index % self.n
        a, b = self.edge(i)
        return BoundaryPoint(i, t, self.cumulative_arclength[i] + t * self.edge_lengths[i], lerp(a, b, t))

    @cached_property
    def engine(self):
        from .shortest_path import GeodesicEngine

        return GeodesicEngine(self)


def _merge_collinear(pts: list) -> list:
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if orient(a, b, c) == 0:
                # b between a and c merges; otherwise the boundary folds back
                if (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) <= 0:
                    raise SelfIntersecting(f"boundary folds back at vertex {b}")
                del pts[i]
                changed = True
                break
    return pts


def _check_simple(pts: list) -> None:
    n = len(pts)
    arr = np.asarray(pts, dtype=float)
    nxt = np.roll(arr, -1, axis=0)
    lo = np.minimum(arr, nxt)
    hi = np.maximum(arr, nxt)
    for i in range(n):
        overlap = np.all(lo[i] <= hi, axis=1) & np.all(lo <= hi[i], axis=1)
        for j in np.nonzero(overlap)[0]:
            j = int(j)
            if j <= i:
                continue
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]):
                raise SelfIntersecting(f"edges {i} and {j} intersect")


def validate_polygon(raw_vertices: Sequence) -> SimplePolygon:
    """Validate ``raw_vertices`` and return the canonical clockwise polygon.

    Collinear interior vertices are merged; counterclockwise input is
    reversed while keeping the first vertex in place.
    """
    pts = []
    for v in raw_vertices:
        x, y = float(v[0]), float(v[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"non-finite coordinate {v!r}")
        pts.append((x, y))
    if len(pts) >= 2 and pts[0] == pts[-1]:
        pts.pop()
    if len(pts) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(pts)}")
    if len(set(pts)) != len(pts):
        raise DuplicateVertex("polygon repeats a vertex")
    if all(orient(pts[0], pts[1], p) == 0 for p in pts[2:]):
        raise ZeroArea("all vertices are collinear")
    pts = _merge_collinear(pts)
    if len(pts) < 3:
        raise ZeroArea("all vertices are collinear")
    _check_simple(pts)
    area = signed_area(pts)
    if area == 0.0:
        raise ZeroArea("polygon has zero area")
    if area > 0:
        pts = [pts[0]] + pts[:0:-1]
    lengths = tuple(dist(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts)))
    cum = [0.0]
    for length in lengths:
        cum.append(cum[-1] + length)
    return SimplePolygon(tuple(pts), lengths, tuple(cum), cum[-1])


def point_at_arclength(P: SimplePolygon, s: float) -> BoundaryPoint:
    L = P.perimeter
    s = math.fmod(s, L)
    if s < 0:
        s += L
    cum = P.cumulative_arclength
    i = bisect.bisect_right(cum, s) - 1
    i = min(max(i, 0), P.n - 1)
    t = (s - cum[i]) / P.edge_lengths[i]
    t = min(max(t, 0.0), 1.0)
    if t >= 1.0:
        i, t = (i + 1) % P.n, 0.0
    a, b = P.edge(i)
    return BoundaryPoint(i, t, P.cumulative_arclength[i] + t * P.edge_lengths[i], lerp(a, b, t))


def boundary_arc(P: SimplePolygon, u: BoundaryPoint, v: BoundaryPoint) -> BoundaryArc:
    """Clockwise boundary portion from ``u`` to ``v``."""
    length = (v.s - u.s) % P.perimeter
    if abs(v.s - u.s) < 1e-15:
        length = 0.0
    return BoundaryArc(u, v, length)


def project_to_boundary(P: SimplePolygon, p) -> BoundaryPoint:
    """Closest boundary point to ``p``."""
    best = None
    for i in range(P.n):
        a, b = P.edge(i)
        dx, dy = b[0] - a[0], b[1] - a[1]
        t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy)
        t = min(max(t, 0.0), 1.0)
        q = lerp(a, b, t)
        d = dist(p, q)
        if best is None or d < best[0]:
            best = (d, i, t)
    _, i, t = best
    if t >= 1.0:
        i, t = (i + 1) % P.n, 0.0
    return P.boundary_point(i, t)


def distance_to_boundary(P: SimplePolygon, p) -> float:
    v = P.array
    e, L2 = P.edge_vectors
    t = np.clip(((p[0] - v[:, 0]) * e[:, 0] + (p[1] - v[:, 1]) * e[:, 1]) / L2, 0.0, 1.0)
    fx = v[:, 0] + t * e[:, 0] - p[0]
    fy = v[:, 1] + t * e[:, 1] - p[1]
    return float(np.sqrt(fx * fx + fy * fy).min())


def inside_tol(P: SimplePolygon, p, tol: float | None = None) -> bool:
    """Closed-polygon membership that also accepts points within ``tol`` of the boundary."""
    if tol is None:
        tol = 1e-11 * P.scale
    # away from the boundary the float even-odd test is reliable
    if distance_to_boundary(P, p) <= tol:
        return True
    return bool(points_in_polygon(P.array, np.asarray([p], dtype=float))[0])


def segment_inside(P: SimplePolygon, a, b, tol: float | None = None) -> bool:
    """Does the closed segment ``ab`` lie in the closed polygon?

    Grazing contact with vertices and running along edges both count as
    inside.  Points within ``tol`` of the boundary count as on it, so
    floating point boundary positions are accepted.
    """
    if tol is None:
        tol = 1e-11 * P.scale
    if not inside_tol(P, a, tol) or not inside_tol(P, b, tol):
        return False
    if a == b:
        return True
    verts = P.vertices
    n = P.n
    dx, dy = b[0] - a[0], b[1] - a[1]
    dd = dx * dx + dy * dy
    seg = math.sqrt(dd)
    ts = [0.0, 1.0]
    for i in range(n):
        p, q = verts[i], verts[(i + 1) % n]
        if segments_cross_properly(a, b, p, q):
            ex, ey = q[0] - p[0], q[1] - p[1]
            elen = math.hypot(ex, ey)
            # both ends within tol of the edge line: running along the edge
            if abs(cross(p, q, a)) <= tol * elen and abs(cross(p, q, b)) <= tol * elen:
                continue
            den = dx * ey - dy * ex
            if den == 0.0:
                continue
            # crossing point parameter along ab; crossings at an end within tol are contact
            t = ((p[0] - a[0]) * ey - (p[1] - a[1]) * ex) / den
            if min(t, 1.0 - t) * seg > tol:
                return False
        # vertex on (or within tol of) the segment splits it
        t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / dd
        if 0.0 < t < 1.0 and abs(cross(a, b, p)) <= tol * seg:
            ts.append(t)
    ts.sort()
    for t0, t1 in zip(ts, ts[1:]):
        if (t1 - t0) * seg <= tol:
            continue
        if not inside_tol(P, lerp(a, b, 0.5 * (t0 + t1)), tol):
            return False
    return True
