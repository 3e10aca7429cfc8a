"""Large-perimeter cover: long medial-axis edges become corridors covered
almost optimally, everything else is covered by step-2 boundary disks.

The medial axis is built at desk scale. Features are the open polygon
edges and the reflex vertices; for each pair, the bisector curve (a line,
or a parabola for vertex + edge) is restricted by the linear constraints
that keep both feet valid, sampled, and the runs where the pair is closest
to the point are refined by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Point2, SimplePolygon, point_at_arclength, points_in_polygon
from .greedy import CoverSolution

_SAMPLE = 0.05


@dataclass(frozen=True)
class AxisEdge:
    kind: str  # "segment" or "parabola"
    features: tuple  # pair of ("edge", i) / ("vertex", i)
    p0: tuple
    p1: tuple
    length: float
    curve: tuple = field(repr=False)  # parameters for point()
    tau: tuple = field(repr=False)  # parameter range

    def point(self, lam: float) -> tuple[float, float]:
        """Point at fraction ``lam`` of the parameter range."""
        tau = self.tau[0] + lam * (self.tau[1] - self.tau[0])
        p = _curve_points(self.kind, self.curve, np.array([tau]))[0]
        return float(p[0]), float(p[1])


@dataclass
class MedialAxis:
    edges: list
    adjacency: list  # adjacency[i] = indices of edges sharing an endpoint

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class CorridorPortion:
    kind: str  # "edge" or "vertex"
    index: int
    t0: float = 0.0
    t1: float = 0.0
    length: float = 0.0


@dataclass(frozen=True)
class Corridor:
    axis_edge: AxisEdge
    boundary_portions: tuple


# -- geometry helpers ------------------------------------------------------


def _frame(P: SimplePolygon, i: int):
    """Start point, unit direction, inward unit normal and length of edge i."""
    a = np.array(P.vertices[i], dtype=float)
    b = np.array(P.vertices[(i + 1) % P.n], dtype=float)
    L = float(np.linalg.norm(b - a))
    u = (b - a) / L
    # vertices are clockwise, so the interior lies to the right
    nrm = np.array([u[1], -u[0]])
    return a, u, nrm, L


def _boundary_distance(P: SimplePolygon, pts: np.ndarray) -> np.ndarray:
    V = P.array
    e = np.roll(V, -1, axis=0) - V
    L2 = (e ** 2).sum(axis=1)
    w = pts[:, None, :] - V[None, :, :]
    t = np.clip(np.einsum("pkj,kj->pk", w, e) / L2[None], 0.0, 1.0)
    r = w - t[..., None] * e[None]
    return np.sqrt(np.einsum("pkj,pkj->pk", r, r).min(axis=1))


def _feature_distance(P: SimplePolygon, feat, pts: np.ndarray) -> np.ndarray:
    kind, i = feat
    if kind == "vertex":
        return np.linalg.norm(pts - np.asarray(P.vertices[i]), axis=1)
    a, u, nrm, L = _frame(P, i)
    w = pts - a
    t = w @ u
    d = w @ nrm
    return np.where((t >= -1e-12) & (t <= L + 1e-12) & (d >= -1e-12), np.abs(d), np.inf)


def _curve_points(kind, curve, tau: np.ndarray) -> np.ndarray:
    if kind == "segment":
        o, d = curve
        return o[None, :] + tau[:, None] * d[None, :]
    a, u, nrm, v, alpha = curve
    f = a[None, :] + tau[:, None] * u[None, :]
    g = f - v[None, :]
    h = (g ** 2).sum(axis=1) / (2.0 * alpha)
    return f + h[:, None] * nrm[None, :]


def _clip(lo, hi, alpha, beta, lo_val, hi_val):
    """Intersect [lo, hi] with {tau : lo_val <= alpha + beta * tau <= hi_val}."""
    if abs(beta) < 1e-14:
        if lo_val - 1e-12 <= alpha <= hi_val + 1e-12:
            return lo, hi
        return 1.0, 0.0
    t_a = (lo_val - alpha) / beta
    t_b = (hi_val - alpha) / beta
    if t_a > t_b:
        t_a, t_b = t_b, t_a
    return max(lo, t_a), min(hi, t_b)


def _bbox_range(P, o, d):
    x0, y0, x1, y1 = P.bbox
    lo, hi = -math.inf, math.inf
    lo, hi = _clip(lo, hi, o[0], d[0], x0, x1)
    lo, hi = _clip(lo, hi, o[1], d[1], y0, y1)
    return lo, hi


def _pair_curve(P: SimplePolygon, f, g):
    """(kind, curve params, tau range) of the bisector of two features, or None."""
    if f[0] == "vertex" and g[0] == "edge":
        f, g = g, f
    if f[0] == "edge" and g[0] == "edge":
        a1, u1, n1, L1 = _frame(P, f[1])
        a2, u2, n2, L2 = _frame(P, g[1])
        N = n1 - n2
        nn = float(N @ N)
        if nn < 1e-20:
            return None
        c = float(n1 @ a1 - n2 @ a2)
        o = N * c / nn
        d = np.array([-N[1], N[0]]) / math.sqrt(nn)
        lo, hi = _bbox_range(P, o, d)
        for a, u, nrm, L in ((a1, u1, n1, L1), (a2, u2, n2, L2)):
            lo, hi = _clip(lo, hi, float((o - a) @ u), float(d @ u), 0.0, L)
            lo, hi = _clip(lo, hi, float((o - a) @ nrm), float(d @ nrm), 0.0, math.inf)
        if hi <= lo:
            return None
        return "segment", (o, d), (lo, hi)
    if f[0] == "edge" and g[0] == "vertex":
        i, j = f[1], g[1]
        if j in (i, (i + 1) % P.n):
            return None
        a, u, nrm, L = _frame(P, i)
        v = np.asarray(P.vertices[j], dtype=float)
        alpha = float(nrm @ (v - a))
        if alpha <= 1e-12:
            return None
        return "parabola", (a, u, nrm, v, alpha), (0.0, L)
    va = np.asarray(P.vertices[f[1]], dtype=float)
    vb = np.asarray(P.vertices[g[1]], dtype=float)
    o = 0.5 * (va + vb)
    w = vb - va
    d = np.array([-w[1], w[0]]) / float(np.linalg.norm(w))
    lo, hi = _bbox_range(P, o, d)
    if hi <= lo:
        return None
    return "segment", (o, d), (lo, hi)


def _valid(P, kind, curve, f, g, tau, tol):
    pts = _curve_points(kind, curve, tau)
    df = _feature_distance(P, f, pts)
    dg = _feature_distance(P, g, pts)
    ok = np.isfinite(df) & np.isfinite(dg) & (np.abs(df - dg) <= tol)
    idx = np.nonzero(ok)[0]
    if len(idx):
        D = _boundary_distance(P, pts[idx])
        inside = points_in_polygon(P.vertices, pts[idx]) | (D <= tol)
        ok[idx] = inside & (df[idx] <= D + tol)
    return ok


def _refine(P, kind, curve, f, g, t_in, t_out, tol):
    for _ in range(60):
        m = 0.5 * (t_in + t_out)
        if _valid(P, kind, curve, f, g, np.array([m]), tol)[0]:
            t_in = m
        else:
            t_out = m
    return t_in


def _curve_length(kind, curve, t0, t1):
    if kind == "segment":
        return abs(t1 - t0)
    a, u, nrm, v, alpha = curve
    tv = float((v - a) @ u)

    def F(t):
        s = (t - tv) / alpha
        return 0.5 * alpha * (s * math.sqrt(1 + s * s) + math.asinh(s))

    return abs(F(t1) - F(t0))


def medial_axis(P: SimplePolygon, sample: float = _SAMPLE) -> MedialAxis:
    feats = [("edge", i) for i in range(P.n)] + [("vertex", i) for i in range(P.n) if P.reflex[i]]
    tol = 1e-12 * max(1.0, P.scale)
    edges = []
    for x in range(len(feats)):
        for y in range(x + 1, len(feats)):
            f, g = feats[x], feats[y]
            pair = _pair_curve(P, f, g)
            if pair is None:
                continue
            kind, curve, (lo, hi) = pair
            N = int(min(20000, max(64, math.ceil((hi - lo) / sample))))
            tau = np.linspace(lo, hi, N)
            ok = _valid(P, kind, curve, f, g, tau, tol)
            if not ok.any():
                continue
            idx = np.nonzero(ok)[0]
            runs = np.split(idx, np.nonzero(np.diff(idx) > 1)[0] + 1)
            for run in runs:
                s, e = int(run[0]), int(run[-1])
                t0 = tau[s] if s == 0 else _refine(P, kind, curve, f, g, tau[s], tau[s - 1], tol)
                t1 = tau[e] if e == N - 1 else _refine(P, kind, curve, f, g, tau[e], tau[e + 1], tol)
                length = _curve_length(kind, curve, t0, t1)
                if length <= 1e-9:
                    continue
                p0, p1 = _curve_points(kind, curve, np.array([t0, t1]))
                ff, gg = (f, g) if not (f[0] == "vertex" and g[0] == "edge") else (g, f)
                edges.append(
                    AxisEdge(kind, (ff, gg), tuple(map(float, p0)), tuple(map(float, p1)), length, curve, (t0, t1))
                )
    # tangent junctions (parabola meeting a line) are only located to ~sqrt(tol)
    eps = 1e-4 * max(1.0, P.scale)
    adj = [[] for _ in edges]
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            a, b = edges[i], edges[j]
            if min(math.dist(p, q) for p in (a.p0, a.p1) for q in (b.p0, b.p1)) <= eps:
                adj[i].append(j)
                adj[j].append(i)
    return MedialAxis(edges, adj)


# -- corridors -----------------------------------------------------------


def _portion(P: SimplePolygon, feat, e: AxisEdge) -> CorridorPortion:
    kind, i = feat
    if kind == "vertex":
        return CorridorPortion("vertex", i)
    a, u, _, L = _frame(P, i)
    s0 = float((np.asarray(e.p0) - a) @ u)
    s1 = float((np.asarray(e.p1) - a) @ u)
    s0, s1 = sorted((min(max(s0, 0.0), L), min(max(s1, 0.0), L)))
    return CorridorPortion("edge", i, s0 / L, s1 / L, s1 - s0)


def extract_corridors(axis: MedialAxis, c_threshold: float = 2.5, P: SimplePolygon | None = None) -> list:
    if c_threshold <= 2:
        raise ValueError("corridor threshold must exceed 2")
    if P is None:
        raise ValueError("the polygon is needed to map axis edges to boundary portions")
    out = []
    for e in axis.edges:
        if e.length >= c_threshold:
            out.append(Corridor(e, tuple(_portion(P, f, e) for f in e.features)))
    return out


def _step2_points(P: SimplePolygon, s0: float, s1: float) -> list:
    """Boundary centers evenly spaced so each covers at most 2 of [s0, s1]."""
    span = s1 - s0
    if span <= 0:
        return []
    m = max(1, math.ceil(span / 2.0 - 1e-12))
    return [Point2(*point_at_arclength(P, s0 + (2 * j + 1) * span / (2 * m)).xy) for j in range(m)]


def _edge_step2(P: SimplePolygon, i: int, t0: float, t1: float) -> list:
    s = P.cumulative_arclength[i]
    L = P.edge_lengths[i]
    return _step2_points(P, s + t0 * L, s + t1 * L)


@dataclass
class CorridorPlan:
    centers: list
    axis_centers: int = 0
    boundary_centers: int = 0
    switches: int = 0


def plan_corridor(P: SimplePolygon, corridor: Corridor) -> CorridorPlan:
    e = corridor.axis_edge
    portions = corridor.boundary_portions
    if e.kind == "parabola" or any(p.kind == "vertex" for p in portions):
        cs = []
        for p in portions:
            if p.kind == "vertex":
                cs.append(Point2(*P.vertices[p.index]))
            else:
                cs += _edge_step2(P, p.index, p.t0, p.t1)
        return CorridorPlan(cs, 0, len(cs), 0)

    o, d = e.curve
    tau0, tau1 = e.tau
    sides = []
    for p in portions:
        a, u, nrm, L = _frame(P, p.index)
        beta = float(d @ u)
        sign = 1.0 if beta >= 0 else -1.0
        start = float((o + tau0 * d - a) @ u)
        sides.append((a, u, nrm, L, sign, start, p))

    def foot_progress(side, tau):
        a, u, nrm, L, sign, start, _ = side
        return sign * (float((o + tau * d - a) @ u) - start)

    def clearance(tau):
        a, u, nrm, *_ = sides[0]
        return abs(float((o + tau * d - a) @ nrm))

    def chord(tau):
        w = clearance(tau)
        return math.sqrt(1.0 - w * w) if w < 1.0 else 0.0

    lengths = [s[6].length for s in sides]
    front = [0.0 for _ in sides]
    centers = []
    axis_n = 0
    tau = tau0
    switched = False
    for _ in range(100000):
        if all(f >= Lk - 1e-12 for f, Lk in zip(front, lengths)):
            break

        def no_gap(t):
            r = chord(t)
            return r > 0 and all(foot_progress(s, t) - r <= f + 1e-12 for s, f in zip(sides, front))

        if not no_gap(tau):
            switched = True
            break
        lo, hi = tau, tau1
        if not no_gap(hi):
            for _ in range(80):
                m = 0.5 * (lo + hi)
                if no_gap(m):
                    lo = m
                else:
                    hi = m
            hi = lo
        def finishes(t):
            r = chord(t)
            return all(foot_progress(s, t) + r >= Lk - 1e-12 for s, Lk in zip(sides, lengths))

        if finishes(hi):
            # last disk: stop at the first position that completes both sides
            lo = tau
            for _ in range(80):
                m = 0.5 * (lo + hi)
                if finishes(m):
                    hi = m
                else:
                    lo = m
        r = chord(hi)
        new = [min(max(f, foot_progress(s, hi) + r), Lk) for s, f, Lk in zip(sides, front, lengths)]
        # corridor length inside this disk, not just the newly covered part
        held = sum(
            min(foot_progress(s, hi) + r, Lk) - max(foot_progress(s, hi) - r, 0.0) for s, Lk in zip(sides, lengths)
        )
        if held <= 2.0 or new == front:
            switched = True
            break
        centers.append(Point2(*map(float, o + hi * d)))
        axis_n += 1
        front = new
        tau = hi
    boundary = []
    for s, f, Lk in zip(sides, front, lengths):
        if f >= Lk - 1e-12:
            continue
        a, u, nrm, L, sign, start, p = s
        # remaining stretch on this side, in the edge's own arc length
        lo_s, hi_s = sorted((start + sign * f, start + sign * Lk))
        boundary += _edge_step2(P, p.index, max(lo_s, 0.0) / L, min(hi_s, L) / L)
    return CorridorPlan(centers + boundary, axis_n, len(boundary), 1 if (switched and boundary) else 0)


def cover_corridor(P: SimplePolygon, corridor: Corridor) -> list:
    return plan_corridor(P, corridor).centers


def corridor_bound(corridor: Corridor) -> int:
    """Disks the near-optimality statement allows: ceil(longer side / 2) + 2."""
    longest = max(p.length for p in corridor.boundary_portions)
    return math.ceil(longest / 2.0) + 2


def _short_portions(P: SimplePolygon, corridors: list) -> list:
    """Boundary arc-length intervals not governed by any corridor."""
    taken = []
    for c in corridors:
        for p in c.boundary_portions:
            if p.kind == "edge" and p.length > 0:
                s = P.cumulative_arclength[p.index]
                L = P.edge_lengths[p.index]
                taken.append((s + p.t0 * L, s + p.t1 * L))
    taken.sort()
    L = P.perimeter
    if not taken:
        return [(0.0, L)]
    merged = []
    for a, b in taken:
        if merged and a <= merged[-1][1] + 1e-12:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    free = []
    for (a0, b0), (a1, b1) in zip(merged, merged[1:]):
        if a1 > b0:
            free.append((b0, a1))
    # the wrap-around stretch from the last portion back to the first
    wrap = (merged[-1][1], merged[0][0] + L)
    if wrap[1] > wrap[0] + 1e-12:
        free.append(wrap)
    return free


def large_perimeter_cover(P: SimplePolygon, c_threshold: float = 2.5, axis: MedialAxis | None = None) -> CoverSolution:
    axis = axis or medial_axis(P)
    corridors = extract_corridors(axis, c_threshold, P)
    centers = []
    per = []
    for c in corridors:
        plan = plan_corridor(P, c)
        centers += plan.centers
        per.append(
            {
                "count": len(plan.centers),
                "bound": corridor_bound(c),
                "longest": max(p.length for p in c.boundary_portions),
                "switches": plan.switches,
                "axis_centers": plan.axis_centers,
            }
        )
    short = []
    for a, b in _short_portions(P, corridors):
        short += _step2_points(P, a, b)
    centers += short
    sol = CoverSolution(centers, len(centers), 0, 0, [])
    sol.info = {"corridors": per, "short_centers": len(short), "c_threshold": c_threshold}
    return sol
