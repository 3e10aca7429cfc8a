"""JSON instances and solutions, and SVG rendering of covers.

Instances may carry a sensing radius R. Internally every coordinate is
divided by R so disks have unit radius; emitted coordinates are multiplied
back, so callers only ever see their own units.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import InstanceError
from .geometry import SimplePolygon, validate_polygon


@dataclass(frozen=True)
class ProblemInstance:
    polygon: tuple  # raw vertices as given
    radius: float = 1.0

    def scaled_vertices(self) -> list[tuple[float, float]]:
        r = self.radius
        return [(x / r, y / r) for x, y in self.polygon]

    def polygon_unit(self) -> SimplePolygon:
        """Validated polygon in unit-radius coordinates."""
        return validate_polygon(self.scaled_vertices())


def _number(v, what):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InstanceError(f"{what} must be a number, got {v!r}")
    if not math.isfinite(v):
        raise InstanceError(f"{what} must be finite")
    return float(v)


def parse_instance(data: bytes | str) -> ProblemInstance:
    """Parse ``{"vertices": [[x, y], ...], "radius": r}`` and validate the polygon."""
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InstanceError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceError("instance must be a JSON object")
    if "vertices" not in doc:
        raise InstanceError('missing "vertices"')
    verts = doc["vertices"]
    if not isinstance(verts, list):
        raise InstanceError('"vertices" must be a list of [x, y] pairs')
    pts = []
    for k, v in enumerate(verts):
        if not isinstance(v, (list, tuple)) or len(v) != 2:
            raise InstanceError(f"vertex {k} must be an [x, y] pair")
        pts.append((_number(v[0], f"vertex {k} x"), _number(v[1], f"vertex {k} y")))
    radius = _number(doc.get("radius", 1.0), "radius")
    if radius <= 0:
        raise InstanceError("radius must be positive")
    inst = ProblemInstance(tuple(pts), radius)
    inst.polygon_unit()  # raises InvalidPolygon subclasses
    return inst


def emit_instance(inst: ProblemInstance) -> bytes:
    doc = {"vertices": [[x, y] for x, y in inst.polygon], "radius": inst.radius}
    return (json.dumps(doc, indent=2) + "\n").encode()


def _solution_doc(solution, radius: float, report=None, extra: dict | None = None) -> dict:
    r = radius
    doc = {
        "centers": [[float(c[0]) * r, float(c[1]) * r] for c in solution.centers],
        "count": solution.k,
        "sum_q": solution.sum_Q,
        "verified": bool(report is not None and report.valid),
        "gaps": [],
    }
    if report is not None:
        doc["gaps"] = [
            {
                "start": [g.start.xy[0] * r, g.start.xy[1] * r],
                "end": [g.end.xy[0] * r, g.end.xy[1] * r],
                "length": g.length * r,
            }
            for g in report.gaps
        ]
    if extra:
        doc.update(extra)
    return doc


def emit_solution(
    solution,
    format: str = "json",
    radius: float = 1.0,
    report=None,
    P: SimplePolygon | None = None,
    extra: dict | None = None,
) -> bytes:
    if format == "json":
        return (json.dumps(_solution_doc(solution, radius, report, extra), indent=2) + "\n").encode()
    if format == "svg":
        if P is None:
            raise ValueError("SVG output needs the polygon")
        return render_svg(P, solution.centers, radius, report).encode()
    raise ValueError(f"unknown format {format!r}")


def render_svg(P: SimplePolygon, centers, radius: float = 1.0, report=None, sagitta: float = 1e-3) -> str:
    """Polygon outline, geodesic disk boundaries as polylines, centers as dots."""
    from .disk import disk_boundary

    r = radius
    x0, y0, x1, y1 = P.bbox
    pad = 1.1
    x0, y0, x1, y1 = (x0 - pad) * r, (y0 - pad) * r, (x1 + pad) * r, (y1 + pad) * r
    w, h = x1 - x0, y1 - y0
    stroke = max(w, h) / 800.0

    def fmt(pts):
        # flip y so the picture is not mirrored
        return " ".join(f"{x * r:.6g},{(-y) * r:.6g}" for x, y in pts)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.6g} {-y1:.6g} {w:.6g} {h:.6g}" '
        f'width="{min(1200, 800 * w / max(h, 1e-9)):.0f}" height="{min(1200, 800 * h / max(w, 1e-9)):.0f}">',
        f'<polygon points="{fmt(P.vertices)}" fill="#f4f4f4" stroke="black" stroke-width="{2 * stroke:.4g}"/>',
    ]
    for c in centers:
        for line in disk_boundary(P, c).polyline(sagitta):
            out.append(
                f'<polyline points="{fmt(line)}" fill="none" stroke="#1f77b4" stroke-width="{stroke:.4g}"/>'
            )
    for c in centers:
        out.append(f'<circle cx="{c[0] * r:.6g}" cy="{-c[1] * r:.6g}" r="{3 * stroke:.4g}" fill="#d62728"/>')
    if report is not None:
        for g in report.gaps:
            a, b = g.start.xy, g.end.xy
            out.append(
                f'<line x1="{a[0] * r:.6g}" y1="{-a[1] * r:.6g}" x2="{b[0] * r:.6g}" y2="{-b[1] * r:.6g}" '
                f'stroke="#ff7f0e" stroke-width="{4 * stroke:.4g}"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
