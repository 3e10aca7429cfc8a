"""Ear-clipping triangulation with a rooted dual tree and point location."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .geometry import SimplePolygon, orient


@dataclass
class Triangulation:
    """Triangles are counterclockwise vertex-index triples."""

    triangles: list[tuple[int, int, int]]
    dual_adjacency: list[list[tuple[int, tuple[int, int]]]]
    parent: list[int] = field(repr=False)
    parent_diag: list[tuple[int, int] | None] = field(repr=False)
    depth: list[int] = field(repr=False)
    # point location index: triangle corners as (T, 3, 2) array
    corners: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.triangles)

    def shared_diagonal(self, t0: int, t1: int) -> tuple[int, int]:
        for nb, diag in self.dual_adjacency[t0]:
            if nb == t1:
                return diag
        raise KeyError((t0, t1))

    def dual_path(self, t0: int, t1: int) -> list[int]:
        """Triangles on the tree path from ``t0`` to ``t1`` inclusive."""
        up, down = [t0], [t1]
        a, b = t0, t1
        depth, parent = self.depth, self.parent
        while depth[a] > depth[b]:
            a = parent[a]
            up.append(a)
        while depth[b] > depth[a]:
            b = parent[b]
            down.append(b)
        while a != b:
            a = parent[a]
            b = parent[b]
            up.append(a)
            down.append(b)
        down.pop()
        return up + down[::-1]

    def dual_distance(self, t0: int, t1: int) -> int:
        return len(self.dual_path(t0, t1)) - 1

    def clearance(self, p) -> np.ndarray:
        """Per-triangle signed distance of ``p`` to the nearest triangle side."""
        c = self.corners
        px, py = p[0], p[1]
        out = None
        for k in range(3):
            a = c[:, k]
            b = c[:, (k + 1) % 3]
            ex = b[:, 0] - a[:, 0]
            ey = b[:, 1] - a[:, 1]
            cr = ex * (py - a[:, 1]) - ey * (px - a[:, 0])
            d = cr / np.hypot(ex, ey)
            out = d if out is None else np.minimum(out, d)
        return out

    def locate_all(self, p, tol: float = 1e-9) -> list[int]:
        """All triangles whose closed interior contains ``p`` (within tol)."""
        d = self.clearance(p)
        idx = np.nonzero(d >= -tol)[0]
        if len(idx) == 0:
            return []
        return [int(i) for i in idx[np.argsort(-d[idx])]]

    def locate(self, p, tol: float = 1e-9) -> int:
        d = self.clearance(p)
        i = int(np.argmax(d))
        if d[i] < -tol:
            return -1
        return i


def _ear_clip(P: SimplePolygon) -> list[tuple[int, int, int]]:
    n = P.n
    v = P.vertices
    # counterclockwise index order
    idx = list(range(n))[::-1]
    if n == 3:
        return [tuple(idx)]
    prev = {idx[k]: idx[k - 1] for k in range(n)}
    nxt = {idx[k]: idx[(k + 1) % n] for k in range(n)}
    reflex = set(i for i in range(n) if P.reflex[i])

    def is_ear(i: int) -> bool:
        a, b, c = prev[i], i, nxt[i]
        if orient(v[a], v[b], v[c]) <= 0:
            return False
        for r in reflex:
            if r in (a, b, c):
                continue
            p = v[r]
            if (
                orient(v[a], v[b], p) >= 0
                and orient(v[b], v[c], p) >= 0
                and orient(v[c], v[a], p) >= 0
            ):
                return False
        return True

    tris = []
    remaining = n
    cur = idx[0]
    guard = 0
    while remaining > 3:
        if is_ear(cur):
            a, b = prev[cur], nxt[cur]
            tris.append((a, cur, b))
            nxt[a] = b
            prev[b] = a
            reflex.discard(cur)
            for w in (a, b):
                if w in reflex and orient(v[prev[w]], v[w], v[nxt[w]]) > 0:
                    reflex.discard(w)
            remaining -= 1
            cur = a
            guard = 0
        else:
            cur = nxt[cur]
            guard += 1
            if guard > remaining:
                raise RuntimeError("ear clipping failed to find an ear")
    a = cur
    tris.append((prev[a], a, nxt[a]))
    return tris


def triangulate(P: SimplePolygon) -> Triangulation:
    tris = _ear_clip(P)
    edge_owner: dict[tuple[int, int], list[int]] = {}
    for t, (a, b, c) in enumerate(tris):
        for e in ((a, b), (b, c), (c, a)):
            edge_owner.setdefault((min(e), max(e)), []).append(t)
    adj: list[list[tuple[int, tuple[int, int]]]] = [[] for _ in tris]
    for e, owners in edge_owner.items():
        if len(owners) == 2:
            t0, t1 = owners
            adj[t0].append((t1, e))
            adj[t1].append((t0, e))
    m = len(tris)
    parent = [-1] * m
    parent_diag: list[tuple[int, int] | None] = [None] * m
    depth = [0] * m
    seen = [False] * m
    seen[0] = True
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for nb, e in adj[t]:
            if not seen[nb]:
                seen[nb] = True
                parent[nb] = t
                parent_diag[nb] = e
                depth[nb] = depth[t] + 1
                queue.append(nb)
    corners = np.array([[P.vertices[i] for i in tri] for tri in tris], dtype=float)
    return Triangulation(tris, adj, parent, parent_diag, depth, corners)
