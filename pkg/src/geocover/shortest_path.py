"""Geodesic shortest paths inside a simple polygon.

Paths are found by running the funnel algorithm through the sleeve of
triangles between the two endpoints.  Distances from a source to points on
a segment are exposed as :class:`DistanceProfile`, a piecewise
"base + Euclidean distance to anchor" function of the segment parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import PointOutsidePolygon, SegmentOutsidePolygon
from .geometry import Point2, SimplePolygon, cross, dist, lerp, orient, segment_inside
from .triangulation import Triangulation, triangulate

START, END = -1, -2
_LOCATE_TOL = 1e-9


@dataclass(frozen=True)
class GeodesicPath:
    points: tuple[Point2, ...]
    length: float
    # polygon vertex index per point, -1 / -2 for the endpoints
    ids: tuple[int, ...] = ()

    def point_at_distance(self, s: float) -> tuple[float, float]:
        """Point at path-length ``s`` from the first point (clamped)."""
        if s <= 0.0:
            return tuple(self.points[0])
        acc = 0.0
        for a, b in zip(self.points, self.points[1:]):
            seg = dist(a, b)
            if acc + seg >= s and seg > 0.0:
                return lerp(a, b, (s - acc) / seg)
            acc += seg
        return tuple(self.points[-1])

    def reversed(self) -> "GeodesicPath":
        ids = tuple({START: END, END: START}.get(i, i) for i in self.ids[::-1])
        return GeodesicPath(self.points[::-1], self.length, ids)


@dataclass(frozen=True)
class ShortestPathTree:
    source: Point2
    parent: tuple[int, ...]  # -1 means the source itself
    dist: tuple[float, ...]


@dataclass(frozen=True)
class ProfilePiece:
    t0: float
    t1: float
    anchor: tuple[float, float]
    base: float
    anchor_id: int = START

    def value(self, p) -> float:
        return self.base + dist(self.anchor, p)


@dataclass(frozen=True)
class DistanceProfile:
    """``d(source, seg(t)) = base_i + |anchor_i - seg(t)|`` on piece ``i``."""

    source: tuple[float, float]
    p0: tuple[float, float]
    p1: tuple[float, float]
    pieces: tuple[ProfilePiece, ...]

    def point(self, t: float) -> tuple[float, float]:
        return lerp(self.p0, self.p1, t)

    def piece_at(self, t: float) -> ProfilePiece:
        for pc in self.pieces:
            if t <= pc.t1:
                return pc
        return self.pieces[-1]

    def __call__(self, t: float) -> float:
        return self.piece_at(t).value(self.point(t))

    @property
    def breakpoints(self) -> list[float]:
        return [self.pieces[0].t0] + [pc.t1 for pc in self.pieces]

    def sublevel(self, level: float) -> tuple[float, float] | None:
        """Interval of ``t`` where the profile is at most ``level``.

        The profile is convex along a segment, so the sublevel set is one
        interval; it is assembled from closed-form per-piece roots.
        """
        lo = hi = None
        for pc in self.pieces:
            r = level - pc.base
            if r < 0.0:
                continue
            iv = _disk_interval(self.p0, self.p1, pc.anchor, r, pc.t0, pc.t1)
            if iv is None:
                continue
            lo = iv[0] if lo is None else min(lo, iv[0])
            hi = iv[1] if hi is None else max(hi, iv[1])
        if lo is None:
            return None
        return lo, hi


def _disk_interval(p0, p1, a, r, t0, t1):
    """Sub-interval of [t0, t1] where |seg(t) - a| <= r."""
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    fx, fy = p0[0] - a[0], p0[1] - a[1]
    A = dx * dx + dy * dy
    if A == 0.0:
        return (t0, t1) if fx * fx + fy * fy <= r * r else None
    B = fx * dx + fy * dy
    C = fx * fx + fy * fy - r * r
    disc = B * B - A * C
    if disc < 0.0:
        return None
    sq = math.sqrt(disc)
    # numerically stable pair of roots of A t^2 + 2 B t + C
    if B >= 0:
        q = -(B + sq)
    else:
        q = -(B - sq)
    ra = q / A
    rb = C / q if q != 0.0 else ra
    lo, hi = min(ra, rb), max(ra, rb)
    lo, hi = max(lo, t0), min(hi, t1)
    if lo > hi:
        return None
    return lo, hi


def circle_line_roots(p0, p1, a, r) -> list[float]:
    """Parameters ``t`` (unbounded) where |p0 + t (p1 - p0) - a| = r."""
    iv = _disk_interval(p0, p1, a, r, -math.inf, math.inf)
    if iv is None:
        return []
    return [iv[0], iv[1]]


def _dedupe_sorted(vals, eps):
    out = []
    for x in sorted(vals):
        if not out or x - out[-1] > eps:
            out.append(x)
    out[-1] = max(out[-1], max(vals))
    return out


def _absorb_slivers(pieces, eps):
    """Fold pieces shorter than ``eps`` (in t) into a neighbour."""
    if len(pieces) <= 1:
        return pieces
    keep = [pc for pc in pieces if pc.t1 - pc.t0 > eps]
    if not keep:
        return pieces[:1]
    out = []
    for pc in keep:
        if out:
            prev = out[-1]
            if prev.anchor_id == pc.anchor_id and prev.anchor == pc.anchor:
                out[-1] = ProfilePiece(prev.t0, pc.t1, pc.anchor, pc.base, pc.anchor_id)
                continue
            pc = ProfilePiece(prev.t1, pc.t1, pc.anchor, pc.base, pc.anchor_id)
        out.append(pc)
    out[0] = ProfilePiece(pieces[0].t0, out[0].t1, out[0].anchor, out[0].base, out[0].anchor_id)
    last = out[-1]
    out[-1] = ProfilePiece(last.t0, pieces[-1].t1, last.anchor, last.base, last.anchor_id)
    return out


def _funnel(start, end, portals) -> list[tuple[tuple[float, float], int]]:
    """Simple stupid funnel over ``portals`` given as (left, lid, right, rid)."""
    ports = [(start, START, start, START)] + list(portals) + [(end, END, end, END)]
    path = [(start, START)]
    apex, apex_id = start, START
    left, left_id = start, START
    right, right_id = start, START
    apex_i = left_i = right_i = 0
    i = 1
    while i < len(ports):
        lp, lid, rp, rid = ports[i]
        if orient(apex, right, rp) >= 0:
            if apex == right or orient(apex, left, rp) < 0:
                right, right_id, right_i = rp, rid, i
            else:
                if path[-1][1] != left_id and path[-1][0] != left:
                    path.append((left, left_id))
                apex, apex_id, apex_i = left, left_id, left_i
                right, right_id, right_i = apex, apex_id, apex_i
                i = apex_i + 1
                continue
        if orient(apex, left, lp) <= 0:
            if apex == left or orient(apex, right, lp) > 0:
                left, left_id, left_i = lp, lid, i
            else:
                if path[-1][1] != right_id and path[-1][0] != right:
                    path.append((right, right_id))
                apex, apex_id, apex_i = right, right_id, right_i
                left, left_id, left_i = apex, apex_id, apex_i
                i = apex_i + 1
                continue
        i += 1
    if path[-1][0] != end or len(path) == 1:
        path.append((end, END))
    else:
        path[-1] = (end, END)
    return path


# a reflex vertex this close to a path leg counts as touched by it
_GRAZE_TOL = 1e-12


class GeodesicEngine:
    """Per-polygon shortest path machinery (triangulation plus caches)."""

    def __init__(self, P: SimplePolygon):
        self.P = P
        self.tri: Triangulation = triangulate(P)
        self._path_cache: dict = {}

    # -- point location -------------------------------------------------
    def candidates(self, p) -> list[int]:
        cands = self.tri.locate_all(p, _LOCATE_TOL * self.P.scale)
        if not cands:
            raise PointOutsidePolygon(f"point {tuple(p)} is outside the polygon")
        return cands

    def _sleeve_portals(self, tris: list[int]):
        v = self.P.vertices
        portals = []
        for t0, t1 in zip(tris, tris[1:]):
            a, b = self.tri.shared_diagonal(t0, t1)
            c = next(k for k in self.tri.triangles[t0] if k != a and k != b)
            if orient(v[c], v[a], v[b]) > 0:
                portals.append((v[b], b, v[a], a))
            else:
                portals.append((v[a], a, v[b], b))
        return portals

    def _best_pair(self, cu: list[int], cv: list[int]) -> tuple[int, int]:
        common = set(cu) & set(cv)
        if common:
            t = next(t for t in cu if t in common)
            return t, t
        best = None
        for a in cu[:6]:
            for b in cv[:6]:
                d = self.tri.depth[a] + self.tri.depth[b]
                dd = self.tri.dual_distance(a, b) if len(cu) > 1 or len(cv) > 1 else 0
                key = (dd, d)
                if best is None or key < best[0]:
                    best = (key, a, b)
        return best[1], best[2]

    def path(self, u, v) -> GeodesicPath:
        u = (float(u[0]), float(u[1]))
        v = (float(v[0]), float(v[1]))
        key = (u, v)
        hit = self._path_cache.get(key)
        if hit is not None:
            return hit
        if u == v:
            self.candidates(u)
            res = GeodesicPath((Point2(*u),), 0.0, (START,))
        else:
            tu, tv = self._best_pair(self.candidates(u), self.candidates(v))
            if tu == tv:
                pts = [(u, START), (v, END)]
            else:
                tris = self.tri.dual_path(tu, tv)
                pts = _funnel(u, v, self._sleeve_portals(tris))
            length = sum(dist(a[0], b[0]) for a, b in zip(pts, pts[1:]))
            res = GeodesicPath(tuple(Point2(*p) for p, _ in pts), length, tuple(i for _, i in pts))
        if len(self._path_cache) > 200_000:
            self._path_cache.clear()
        self._path_cache[key] = res
        return res

    def distance(self, u, v) -> float:
        return self.path(u, v).length

    # -- profiles --------------------------------------------------------
    def _triangle_profile(self, s, s_cands, T, p0, p1, ta, tb):
        """Profile pieces for the sub-segment seg(ta..tb) lying inside ``T``."""
        tri = self.tri
        v = self.P.vertices
        if T in s_cands:
            return [ProfilePiece(ta, tb, s, 0.0, START)]
        ts = min(s_cands[:6], key=lambda c: tri.dual_distance(c, T))
        route = tri.dual_path(T, ts)
        nb = route[1]
        a, b = tri.shared_diagonal(T, nb)
        c = next(k for k in tri.triangles[nb] if k != a and k != b)
        if orient(v[c], v[a], v[b]) > 0:
            left_v, right_v = b, a
        else:
            left_v, right_v = a, b
        pl = self.path(s, v[left_v])
        pr = self.path(s, v[right_v])
        lids = list(pl.ids[:-1]) + [left_v]
        rids = list(pr.ids[:-1]) + [right_v]
        k = 0
        while k < min(len(lids), len(rids)) and lids[k] == rids[k]:
            k += 1

        def chain(path, ids):
            pts = [tuple(p) for p in path.points]
            acc = [0.0]
            for x, y in zip(pts, pts[1:]):
                acc.append(acc[-1] + dist(x, y))
            return pts[k - 1:], ids[k - 1:], acc[k - 1:]

        L, Lid, Ld = chain(pl, lids)
        R, Rid, Rd = chain(pr, rids)
        q0, q1 = lerp(p0, p1, ta), lerp(p0, p1, tb)
        cuts = {0.0, 1.0}
        for chain_pts in (L, R):
            for x, y in zip(chain_pts, chain_pts[1:]):
                f0, f1 = cross(x, y, q0), cross(x, y, q1)
                if (f0 < 0 < f1) or (f1 < 0 < f0):
                    cuts.add(f0 / (f0 - f1))
        cuts = sorted(cuts)
        pieces: list[ProfilePiece] = []
        for u0, u1 in zip(cuts, cuts[1:]):
            if u1 <= u0:
                continue
            m = lerp(q0, q1, 0.5 * (u0 + u1))
            if len(L) > 1 and cross(L[0], L[1], m) > 0:
                j = 1
                while j + 1 < len(L) and cross(L[j], L[j + 1], m) > 0:
                    j += 1
                anchor, aid, base = L[j], Lid[j], Ld[j]
            elif len(R) > 1 and cross(R[0], R[1], m) < 0:
                j = 1
                while j + 1 < len(R) and cross(R[j], R[j + 1], m) < 0:
                    j += 1
                anchor, aid, base = R[j], Rid[j], Rd[j]
            else:
                anchor, aid, base = L[0], Lid[0], Ld[0]
            g0, g1 = ta + u0 * (tb - ta), ta + u1 * (tb - ta)
            if pieces and pieces[-1].anchor_id == aid and pieces[-1].anchor == anchor:
                pieces[-1] = ProfilePiece(pieces[-1].t0, g1, anchor, base, aid)
            else:
                pieces.append(ProfilePiece(g0, g1, anchor, base, aid))
        return pieces

    def profile(self, s, p0, p1, check: bool = True) -> DistanceProfile:
        s = (float(s[0]), float(s[1]))
        p0 = (float(p0[0]), float(p0[1]))
        p1 = (float(p1[0]), float(p1[1]))
        key = ("prof", s, p0, p1)
        hit = self._path_cache.get(key)
        if hit is not None:
            return hit
        s_cands = self.candidates(s)
        if p0 == p1:
            d = self.path(s, p0)
            anchor = tuple(d.points[-2]) if len(d.points) > 1 else s
            base = d.length - dist(anchor, p0)
            res = DistanceProfile(s, p0, p1, (ProfilePiece(0.0, 1.0, anchor, base, d.ids[-2] if len(d.ids) > 1 else START),))
            self._path_cache[key] = res
            return res
        if check and not segment_inside(self.P, p0, p1):
            raise SegmentOutsidePolygon(f"segment {p0}-{p1} leaves the polygon")
        tri = self.tri
        cuts = {0.0, 1.0}
        c0, c1 = self.candidates(p0), self.candidates(p1)
        if not (set(c0) & set(c1)):
            # split the chord where it crosses triangulation diagonals
            v = self.P.vertices
            for t_id, nbrs in enumerate(tri.dual_adjacency):
                for nb, (a, b) in nbrs:
                    if nb < t_id:
                        continue
                    f0, f1 = cross(v[a], v[b], p0), cross(v[a], v[b], p1)
                    if (f0 < 0 < f1) or (f1 < 0 < f0):
                        t = f0 / (f0 - f1)
                        g0, g1 = cross(p0, p1, v[a]), cross(p0, p1, v[b])
                        if g0 * g1 <= 0 and 1e-12 < t < 1.0 - 1e-12:
                            cuts.add(t)
        cuts = _dedupe_sorted(cuts, 1e-12)
        pieces: list[ProfilePiece] = []
        for ta, tb in zip(cuts, cuts[1:]):
            if tb - ta <= 1e-15:
                continue
            m = lerp(p0, p1, 0.5 * (ta + tb))
            T = tri.locate(m, _LOCATE_TOL * self.P.scale)
            if T < 0:
                raise SegmentOutsidePolygon(f"segment {p0}-{p1} leaves the polygon")
            for pc in self._triangle_profile(s, s_cands, T, p0, p1, ta, tb):
                if pieces and pieces[-1].anchor_id == pc.anchor_id and pieces[-1].anchor == pc.anchor:
                    pieces[-1] = ProfilePiece(pieces[-1].t0, pc.t1, pc.anchor, pc.base, pc.anchor_id)
                else:
                    pieces.append(pc)
        pieces = _absorb_slivers(pieces, 1e-12 / max(dist(p0, p1), 1e-300))
        pieces = [self._grazing_anchor(pc, p0, p1) for pc in pieces]
        res = DistanceProfile(s, p0, p1, tuple(pieces))
        self._path_cache[key] = res
        return res

    def _grazed(self, a, b):
        """Reflex vertices lying strictly inside segment ``ab``."""
        P = self.P
        out = []
        ab = dist(a, b)
        if ab == 0.0:
            return out
        tol = _GRAZE_TOL * P.scale * ab
        for i, w in enumerate(P.vertices):
            if not P.reflex[i] or w == a or w == b or abs(cross(a, w, b)) > tol:
                continue
            if (w[0] - a[0]) * (b[0] - w[0]) + (w[1] - a[1]) * (b[1] - w[1]) > 0:
                out.append(i)
        return out

    def _grazing_anchor(self, pc, p0, p1):
        """Move the anchor onto a reflex vertex the whole piece sees it through."""
        a = pc.anchor
        if abs(cross(a, p0, p1)) > _GRAZE_TOL * self.P.scale * dist(p0, p1):
            return pc
        q = lerp(p0, p1, 0.5 * (pc.t0 + pc.t1))
        hits = self._grazed(a, q)
        if not hits:
            return pc
        w_id = max(hits, key=lambda i: dist(a, self.P.vertices[i]))
        w = self.P.vertices[w_id]
        return ProfilePiece(pc.t0, pc.t1, w, pc.base + dist(a, w), w_id)

    def tree(self, source) -> ShortestPathTree:
        source = (float(source[0]), float(source[1]))
        n = self.P.n
        parent = []
        dists = []
        for i in range(n):
            p = self.path(source, self.P.vertices[i])
            dists.append(p.length)
            if len(p.ids) <= 2 and p.length == 0.0:
                parent.append(-1)
            elif len(p.ids) == 2:
                parent.append(-1)
            else:
                parent.append(p.ids[-2] if p.ids[-2] >= 0 else -1)
            # a last leg that grazes a reflex vertex hangs off that vertex
            prev = self.P.vertices[parent[i]] if parent[i] >= 0 else source
            hits = self._grazed(prev, self.P.vertices[i])
            if hits:
                parent[i] = min(hits, key=lambda k: dist(self.P.vertices[k], self.P.vertices[i]))
        return ShortestPathTree(Point2(*source), tuple(parent), tuple(dists))


def triangulation_of(P: SimplePolygon) -> Triangulation:
    return P.engine.tri


def shortest_path(P: SimplePolygon, u, v) -> GeodesicPath:
    return P.engine.path(u, v)


def geodesic_distance(P: SimplePolygon, u, v) -> float:
    return P.engine.path(u, v).length


def shortest_path_tree(P: SimplePolygon, source) -> ShortestPathTree:
    return P.engine.tree(source)


def distance_profile(P: SimplePolygon, source, p0, p1) -> DistanceProfile:
    return P.engine.profile(source, p0, p1)


def last_anchor(path: GeodesicPath) -> tuple[tuple[float, float], float]:
    """Last vertex before the target on ``path`` and its distance from the source."""
    if len(path.points) == 1:
        return tuple(path.points[0]), 0.0
    a = tuple(path.points[-2])
    return a, path.length - dist(a, path.points[-1])
