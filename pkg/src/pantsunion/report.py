"""Figure and table rendering for the report subcommand.

Renders the cusp-modulus region and the catalog norm balls to PNG via
matplotlib, writes the same region as standalone SVG, and emits CSV
tables for the boundary arcs, the catalog volumes, and the counting
checks. Everything lands atomically: files are written to a temp name
in the target directory and renamed into place.
"""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from fractions import Fraction
from typing import List, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import bounds, homology, region

CATALOG_IDS = ("W2", "W3", "W4", "WPrime2", "WPrime4", "M3", "M4", "M5", "M6")
NORM_BALL_IDS = ("W2", "WPrime2", "M3", "M4")


def _atomic_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    handle = tempfile.NamedTemporaryFile(
        "w", dir=directory, prefix=".report.", suffix=".tmp", delete=False
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    except BaseException:
        os.unlink(handle.name)
        raise


def _atomic_figure(path: str, figure) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".report.", suffix=".png")
    os.close(fd)
    try:
        figure.savefig(tmp, format="png", dpi=150)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    finally:
        plt.close(figure)


def volume_value(vol: bounds.SymbolicVolume) -> float:
    if vol.literal is not None:
        return float(vol.literal)
    v_oct = bounds.volume_constant("V_oct").value
    v_tet = bounds.volume_constant("V_3").value
    return float(vol.oct_multiple) * v_oct + float(vol.tet_multiple) * v_tet


# -- region ---------------------------------------------------------------------


def region_figure():
    """Plot the boundary arcs of the admissible modulus region."""
    arcs = region.boundary_arcs()
    fig, ax = plt.subplots(figsize=(7, 5))
    for arc in arcs:
        center = float(arc.center)
        radius = float(arc.radius)
        start, end = sorted((arc.start.angle, arc.end.angle))
        theta = [start + (end - start) * k / 256 for k in range(257)]
        xs = [center + radius * math.cos(t) for t in theta]
        ys = [radius * math.sin(t) for t in theta]
        ax.plot(xs, ys, linewidth=1.0, color="#1f77b4")
    ax.axhline(0.0, color="#999999", linewidth=0.6)
    ax.axvline(0.0, color="#999999", linewidth=0.6)
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title("Admissible cusp moduli: boundary arcs")
    fig.tight_layout()
    return fig


def arcs_csv_text() -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["constraint", "m", "n", "center", "radius", "start_angle", "end_angle"]
    )
    for arc in region.boundary_arcs():
        writer.writerow(
            [
                arc.constraint.kind,
                arc.constraint.m,
                arc.constraint.n,
                str(arc.center),
                str(arc.radius),
                repr(arc.start.angle),
                repr(arc.end.angle),
            ]
        )
    return out.getvalue()


# -- norm balls -------------------------------------------------------------------


def _axis_pairs(dimension: int) -> List[tuple]:
    return [(i, j) for i in range(dimension) for j in range(i + 1, dimension)]


def _hull2d(points: Sequence[tuple]) -> List[tuple]:
    """Andrew's monotone chain; points are exact Fraction pairs."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return list(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: List[tuple] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[tuple] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def norm_ball_figure(polytope, ball_id: str):
    """Scatter every coordinate-plane projection of the ball's vertices."""
    pairs = _axis_pairs(polytope.dimension)
    cols = min(3, len(pairs))
    rows = (len(pairs) + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(3.2 * cols, 3.2 * rows))
    flat = axes.flat if hasattr(axes, "flat") else [axes]
    for ax, (i, j) in zip(flat, pairs):
        projected = [(v[i], v[j]) for v in polytope.vertices]
        hull = _hull2d(projected)
        if len(hull) >= 3:
            loop = hull + hull[:1]
            ax.plot(
                [float(x) for x, _ in loop],
                [float(y) for _, y in loop],
                color="#ff7f0e",
                linewidth=1.2,
            )
        ax.scatter(
            [float(x) for x, _ in projected],
            [float(y) for _, y in projected],
            s=14,
            color="#1f77b4",
        )
        ax.set_xlabel(f"x{i + 1}")
        ax.set_ylabel(f"x{j + 1}")
        ax.set_aspect("equal")
    for ax in list(flat)[len(pairs):]:
        ax.axis("off")
    fig.suptitle(f"Norm ball vertices: {ball_id}")
    fig.tight_layout()
    return fig


def polytope_projection_svg(polytope, ball_id: str, size: int = 400) -> str:
    """Standalone SVG of the first coordinate-plane projection."""
    projected = [(v[0], v[1]) for v in polytope.vertices]
    hull = _hull2d(projected)
    bound = max(
        (abs(c) for point in projected for c in point), default=Fraction(1)
    )
    bound = max(bound, Fraction(1))
    scale = Fraction(size, 1) / (Fraction(5, 2) * bound)

    def place(point):
        x = float(Fraction(size, 2) + point[0] * scale)
        y = float(Fraction(size, 2) - point[1] * scale)
        return x, y

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}"'
        f' viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="0" y1="{size / 2}" x2="{size}" y2="{size / 2}"'
        ' stroke="#cccccc" stroke-width="1"/>',
        f'<line x1="{size / 2}" y1="0" x2="{size / 2}" y2="{size}"'
        ' stroke="#cccccc" stroke-width="1"/>',
    ]
    if len(hull) >= 3:
        points = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(place, hull))
        lines.append(
            f'<polygon points="{points}" fill="none" stroke="#ff7f0e" stroke-width="2"/>'
        )
    for point in sorted(set(projected)):
        x, y = place(point)
        lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#1f77b4"/>')
    lines.append(
        f'<text x="10" y="20" font-family="monospace" font-size="14">'
        f"{ball_id} (x1, x2)</text>"
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# -- tables -----------------------------------------------------------------------


def volumes_csv_text() -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["manifold", "pants", "oct_multiple", "tet_multiple", "volume"])
    for mid in CATALOG_IDS:
        vol = bounds.catalog_volume(mid)
        writer.writerow(
            [
                mid,
                bounds.catalog_pants_count(mid),
                str(vol.oct_multiple),
                str(vol.tet_multiple),
                f"{volume_value(vol):.6f}",
            ]
        )
    return out.getvalue()


def census_csv_text() -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["manifold", "k", "bound", "ok", "equality"])
    for mid in CATALOG_IDS:
        check = bounds.catalog_counting_check(mid)
        writer.writerow(
            [
                mid,
                check["k"],
                f"{check['bound']:.6f}",
                check["ok"],
                check["equality"],
            ]
        )
    return out.getvalue()


# -- entry point --------------------------------------------------------------------


def build_report(output_dir: str) -> List[str]:
    """Write every figure and table; returns the sorted file names."""
    os.makedirs(output_dir, exist_ok=True)
    written = []

    _atomic_text(os.path.join(output_dir, "region.svg"), region.render_svg())
    written.append("region.svg")

    _atomic_figure(os.path.join(output_dir, "region.png"), region_figure())
    written.append("region.png")

    for mid in NORM_BALL_IDS:
        polytope = homology.catalog_norm_ball(mid)
        name = f"norm_ball_{mid}.png"
        _atomic_figure(os.path.join(output_dir, name), norm_ball_figure(polytope, mid))
        written.append(name)

    _atomic_text(os.path.join(output_dir, "arcs.csv"), arcs_csv_text())
    written.append("arcs.csv")
    _atomic_text(os.path.join(output_dir, "volumes.csv"), volumes_csv_text())
    written.append("volumes.csv")
    _atomic_text(os.path.join(output_dir, "census.csv"), census_csv_text())
    written.append("census.csv")

    return sorted(written)
