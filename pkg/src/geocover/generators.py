"""Seeded random simple polygons for tests and benchmarks."""

from __future__ import annotations

import math

import numpy as np

from .geometry import segments_intersect

SHAPES = ("star", "walk", "corridor")


def star_polygon(n: int, seed: int, radius: float = 1.0, spread: float = 0.6) -> list[tuple[float, float]]:
    """Star-shaped polygon around the origin with radii in [radius*(1-spread), radius]."""
    rng = np.random.default_rng(seed)
    base = np.arange(n) * (2 * math.pi / n)
    ang = base + rng.uniform(0.1, 0.9, n) * (2 * math.pi / n)
    r = radius * (1.0 - spread * rng.uniform(0.0, 1.0, n))
    return [(float(a * math.cos(t)), float(a * math.sin(t))) for a, t in zip(r, ang)]


def _untangle(pts: list) -> list:
    """2-opt until no two non-adjacent edges intersect (total length decreases each move)."""
    n = len(pts)
    for _ in range(50 * n * n):
        moved = False
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % n]
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                c, d = pts[j], pts[(j + 1) % n]
                if segments_intersect(a, b, c, d):
                    pts[i + 1 : j + 1] = pts[i + 1 : j + 1][::-1]
                    moved = True
                    break
            if moved:
                break
        if not moved:
            return pts
    raise RuntimeError("2-opt repair did not converge")


def walk_polygon(n: int, seed: int, size: float = 2.0) -> list[tuple[float, float]]:
    """Random-walk vertex cloud repaired into a simple polygon by 2-opt moves."""
    rng = np.random.default_rng(seed)
    steps = rng.normal(0.0, 1.0, (n, 2))
    pts = np.cumsum(steps, axis=0)
    pts -= pts.mean(axis=0)
    span = np.abs(pts).max()
    pts *= size / max(span, 1e-9)
    return _untangle([(float(x), float(y)) for x, y in pts])


def corridor_polygon(n: int, seed: int, tooth_length: float | None = None) -> list[tuple[float, float]]:
    """Comb of long thin teeth on a base strip; perimeter per vertex is large.

    Teeth use four vertices each; leftover vertices sit on a slightly convex
    bottom edge so no three consecutive vertices are collinear.
    """
    if n < 8:
        return star_polygon(n, seed)
    rng = np.random.default_rng(seed)
    m = (n - 4) // 4
    extra = n - 4 * m - 4
    h = tooth_length if tooth_length is not None else 44.0 + 4.0 * rng.uniform()
    widths = rng.uniform(0.6, 1.0, m)
    gaps = rng.uniform(1.0, 2.0, m + 1)
    xs = []
    x = gaps[0]
    for k in range(m):
        xs.append((x, x + widths[k]))
        x += widths[k] + gaps[k + 1]
    X = x
    pts = [(0.0, -1.0)]
    for k in range(extra):
        u = (k + 1) / (extra + 1)
        pts.append((u * X, -1.0 - 0.2 * math.sin(math.pi * u)))
    pts.append((X, -1.0))
    pts.append((X, 0.0))
    for xl, xr in reversed(xs):
        pts += [(xr, 0.0), (xr, h), (xl, h), (xl, 0.0)]
    pts.append((0.0, 0.0))
    return [(float(a), float(b)) for a, b in pts]


def generate_random_polygon(n: int, seed: int, shape: str = "star", **kw) -> list[tuple[float, float]]:
    if n < 3:
        raise ValueError("need at least 3 vertices")
    if shape == "star":
        return star_polygon(n, seed, **kw)
    if shape == "walk":
        return walk_polygon(n, seed, **kw)
    if shape == "corridor":
        return corridor_polygon(n, seed, **kw)
    raise ValueError(f"unknown shape class {shape!r}")
