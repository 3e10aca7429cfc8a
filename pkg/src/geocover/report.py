"""Benchmark tables (CSV) and matplotlib figures for the report subcommand."""

from __future__ import annotations

import csv
import math
import time
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .corridor import large_perimeter_cover  # noqa: E402
from .generators import generate_random_polygon  # noqa: E402
from .geometry import validate_polygon  # noqa: E402
from .greedy import contiguous_greedy  # noqa: E402
from .oracle import packing_lower_bound  # noqa: E402

SIZES = (16, 32, 64, 128, 256)
WIDTHS = (10, 100, 1000)
STAR_RADIUS = 3.0


def greedy_scaling(sizes=SIZES, seeds=(0,), shape: str = "star") -> list[dict]:
    """Per (n, seed): k, sum_Q, sum_Q / (n log2 n) and wall time of the greedy."""
    rows = []
    for n in sizes:
        for seed in seeds:
            kw = {"radius": STAR_RADIUS} if shape == "star" else {}
            P = validate_polygon(generate_random_polygon(n, n + 1000 * seed, shape, **kw))
            t = time.perf_counter()
            sol = contiguous_greedy(P, 0)
            dt = time.perf_counter() - t
            rows.append(
                {
                    "n": P.n,
                    "seed": seed,
                    "k": sol.k,
                    "sum_q": sol.sum_Q,
                    "sum_q_per_nlogn": sol.sum_Q / (P.n * math.log2(P.n)),
                    "seconds": dt,
                }
            )
    return rows


def rectangle_ratios(widths=WIDTHS, c_threshold: float = 2.5) -> list[dict]:
    """Corridor cover size against the packing bound on W x 1 rectangles."""
    rows = []
    for W in widths:
        P = validate_polygon([(0.0, 0.0), (0.0, 1.0), (float(W), 1.0), (float(W), 0.0)])
        sol = large_perimeter_cover(P, c_threshold)
        lb = packing_lower_bound(P)
        per = sol.info["corridors"]
        rows.append(
            {
                "width": W,
                "count": sol.k,
                "packing_lb": lb,
                "ratio": sol.k / lb,
                "corridors": len(per),
                "max_corridor_count": max((c["count"] for c in per), default=0),
                "corridor_bound": max((c["bound"] for c in per), default=0),
            }
        )
    return rows


def write_csv(rows: list[dict], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), delimiter=",")
        w.writeheader()
        w.writerows(rows)


def plot_scaling(rows: list[dict], out_dir: Path) -> list[Path]:
    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(ns, [r["seconds"] for r in rows], "o-")
    ax.set_xlabel("n (vertices)")
    ax.set_ylabel("greedy wall time [s]")
    ax.set_title("Empirical runtime")
    ax.grid(True, which="both", alpha=0.3)
    p1 = out_dir / "runtime.png"
    fig.tight_layout()
    fig.savefig(p1, dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(5, 4))
    ax.semilogx(ns, [r["sum_q_per_nlogn"] for r in rows], "s-", base=2)
    ax.set_xlabel("n (vertices)")
    ax.set_ylabel("sum |Q| / (n log2 n)")
    ax.set_ylim(bottom=0)
    ax.grid(True, alpha=0.3)
    p2 = out_dir / "sum_q.png"
    fig.tight_layout()
    fig.savefig(p2, dpi=120)
    plt.close(fig)
    return [p1, p2]


def plot_cover(P, centers, path: Path, title: str = "", radius: float = 1.0) -> Path:
    from .disk import disk_boundary

    x0, y0, x1, y1 = P.bbox
    elongation = max(x1 - x0, y1 - y0) / max(min(x1 - x0, y1 - y0), 1e-12)
    fig, ax = plt.subplots(figsize=(8, 3) if elongation > 8 else (6, 6))
    xs = [v[0] * radius for v in P.vertices] + [P.vertices[0][0] * radius]
    ys = [v[1] * radius for v in P.vertices] + [P.vertices[0][1] * radius]
    ax.fill(xs, ys, color="#eeeeee")
    ax.plot(xs, ys, "k-", lw=1)
    for c in centers:
        for line in disk_boundary(P, c).polyline(1e-3):
            ax.plot([p[0] * radius for p in line], [p[1] * radius for p in line], "-", color="#1f77b4", lw=0.7)
    ax.plot([c[0] * radius for c in centers], [c[1] * radius for c in centers], ".", color="#d62728")
    # very thin shapes are unreadable at equal aspect
    ax.set_aspect("equal" if elongation <= 8 else "auto")
    ax.set_title(title or f"{len(centers)} disks")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(out_dir, sizes=SIZES, widths=WIDTHS, seeds=(0,)) -> list[Path]:
    """Write scaling.csv, rectangles.csv and the PNG figures into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    scaling = greedy_scaling(sizes, seeds)
    write_csv(scaling, out / "scaling.csv")
    written = [out / "scaling.csv"]
    written += plot_scaling(scaling, out)
    if widths:
        rect = rectangle_ratios(widths)
        write_csv(rect, out / "rectangles.csv")
        written.append(out / "rectangles.csv")
    P = validate_polygon([(0.0, 0.0), (0.0, 0.1), (8.0, 0.1), (8.0, 0.0)])
    sol = contiguous_greedy(P, 0)
    written.append(plot_cover(P, sol.centers, out / "rectangle_greedy.png", f"8 x 0.1 rectangle, greedy k = {sol.k}"))
    return written
