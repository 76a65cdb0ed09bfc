"""Feasible region for the two-pants cusp modulus.

The modulus of a chain neighborhood is constrained by a two-parameter family
of inequalities |m*tau + n| >= 1/4 (direct) and |m/tau + n| >= 1/4
(inverted), which a finite reduction argument cuts down to 13 integer pairs
in each kind, 26 constraints total.  Every constraint locus is a circle with
rational center on the real axis and rational radius, so the whole boundary
arrangement (arc endpoints, the extremal argument, the witness corner) is
computed in exact rational arithmetic, with square roots appearing only as
elements of real quadratic fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .holonomy import CuspModulus, as_modulus
from .scalars import ComplexScalar, QuadExt, exact_sqrt

REDUCED_PAIRS: Tuple[Tuple[int, int], ...] = (
    (1, 0),
    (4, 1),
    (4, -1),
    (3, 1),
    (3, -1),
    (2, 1),
    (2, -1),
    (3, 2),
    (3, -2),
    (4, 3),
    (4, -3),
    (1, 1),
    (1, -1),
)

_SIXTEENTH = Fraction(1, 16)


@dataclass(frozen=True)
class RegionConstraint:
    """One inequality: |m*tau + n| >= 1/4 (direct) or |m/tau + n| >= 1/4."""

    kind: str  # "direct" | "inverted"
    m: int
    n: int

    def __post_init__(self):
        if (self.m, self.n) == (0, 0):
            raise ValueError("(m, n) must be nonzero")
        if self.kind not in ("direct", "inverted"):
            raise ValueError(f"unknown kind {self.kind!r}")

    def label(self) -> str:
        return f"{self.kind}({self.m},{self.n})"

    def margin(self, x, y):
        """Scalar whose sign matches the constraint slack at tau = x + y*i.

        Direct: |m*tau+n|^2 - 1/16.  Inverted: 16*|m+n*tau|^2 - |tau|^2,
        which has the sign of |m/tau+n|^2 - 1/16 once tau != 0.
        """
        if self.kind == "direct":
            u = self.m * x + self.n
            v = self.m * y
            return u * u + v * v - _SIXTEENTH
        u = self.m + self.n * x
        v = self.n * y
        return 16 * (u * u + v * v) - (x * x + y * y)

    def margin_grid(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.kind == "direct":
            return (self.m * x + self.n) ** 2 + (self.m * y) ** 2 - 1.0 / 16.0
        return 16.0 * ((self.m + self.n * x) ** 2 + (self.n * y) ** 2) - (x * x + y * y)

    def circle(self) -> Tuple[Fraction, Fraction, str]:
        """(center on the real axis, radius, side) of the equality locus.

        side == "outside" means the feasible set is the closed exterior;
        "inside" (only |tau| <= 4) means the closed interior.
        """
        m, n = self.m, self.n
        if self.kind == "direct":
            if m == 0:
                raise ValueError("direct constraint with m = 0 has no circle")
            return Fraction(-n, m), Fraction(1, 4 * abs(m)), "outside"
        if n == 0:
            return Fraction(0), Fraction(4 * abs(m)), "inside"
        denom = 16 * n * n - 1
        return Fraction(-16 * m * n, denom), Fraction(4 * abs(m), denom), "outside"

    def reflected(self) -> "RegionConstraint":
        """Image under tau -> -conj(tau)."""
        return RegionConstraint(self.kind, self.m, -self.n)


def reduced_constraints() -> List[RegionConstraint]:
    """The 26 reduced constraints, direct pairs first, in a fixed order."""
    out = [RegionConstraint("direct", m, n) for m, n in REDUCED_PAIRS]
    out += [RegionConstraint("inverted", m, n) for m, n in REDUCED_PAIRS]
    return out


@dataclass
class MembershipResult:
    verdict: str  # inside | boundary | outside | indeterminate
    violated: List[RegionConstraint] = field(default_factory=list)
    equalities: List[RegionConstraint] = field(default_factory=list)


def membership(tau, tol: float = 1e-9) -> MembershipResult:
    """Evaluate all 26 reduced constraints at a modulus.

    Exact backends can certify the boundary verdict; the float backend
    reports a tolerance band as indeterminate instead.
    """
    t = as_modulus(tau).tau
    x, y = t.re, t.im
    violated: List[RegionConstraint] = []
    equalities: List[RegionConstraint] = []
    indeterminate = False
    for con in reduced_constraints():
        m = con.margin(x, y)
        if isinstance(m, float):
            if m < -tol:
                violated.append(con)
            elif m <= tol:
                indeterminate = True
        else:
            if m < 0:
                violated.append(con)
            elif m == 0:
                equalities.append(con)
    if violated:
        return MembershipResult("outside", violated, equalities)
    if isinstance(x, float) or isinstance(y, float):
        if indeterminate:
            return MembershipResult("indeterminate", [], [])
        return MembershipResult("inside", [], [])
    if equalities:
        return MembershipResult("boundary", [], equalities)
    return MembershipResult("inside", [], [])


def verify_reduction(grid_density: int, mn_bound: int) -> bool:
    """Finite check that the 26 reduced constraints imply the full family.

    Sweeps a grid_density x grid_density grid over [-4.5, 4.5] x (0, 4.5];
    every grid point satisfying the reduced set must satisfy every
    constraint with |m|, |n| <= mn_bound.
    """
    if mn_bound < 5:
        raise ValueError("mn_bound must be at least 5")
    if grid_density < 2:
        raise ValueError("grid_density must be at least 2")
    xs = np.linspace(-4.5, 4.5, grid_density)
    ys = np.linspace(4.5 / grid_density, 4.5, grid_density)
    xg, yg = np.meshgrid(xs, ys)
    x = xg.ravel()
    y = yg.ravel()
    keep = np.ones(x.shape, dtype=bool)
    for con in reduced_constraints():
        keep &= con.margin_grid(x, y) >= 0.0
    x, y = x[keep], y[keep]
    if x.size == 0:
        return True
    rr = x * x + y * y
    tol = 1e-12
    for m in range(0, mn_bound + 1):
        n_start = 1 if m == 0 else -mn_bound
        for n in range(n_start, mn_bound + 1):
            if m == 0 and n == 0:
                continue
            direct = (m * x + n) ** 2 + (m * y) ** 2 - 1.0 / 16.0
            if np.any(direct < -tol):
                return False
            inverted = 16.0 * ((m + n * x) ** 2 + (n * y) ** 2) - rr
            if np.any(inverted < -tol * np.maximum(rr, 1.0)):
                return False
    return True


@dataclass(frozen=True)
class ArcEndpoint:
    """Exact arc endpoint: x rational, y = sqrt(y_sq) with y_sq rational."""

    x: Fraction
    y_sq: Fraction
    angle: float  # atan2(y, x - center), in [0, pi]
    provenance: Tuple[str, ...]  # labels of the constraints meeting here

    def point(self) -> ComplexScalar:
        return ComplexScalar.from_quad(QuadExt(self.x), exact_sqrt(self.y_sq))


@dataclass
class BoundaryArc:
    """Portion of one constraint circle lying on the region boundary."""

    constraint: RegionConstraint
    center: Fraction
    radius: Fraction
    start: ArcEndpoint
    end: ArcEndpoint


def _circle_intersection_upper(
    c1: Fraction, r1_sq: Fraction, c2: Fraction, r2_sq: Fraction
) -> Optional[Tuple[Fraction, Fraction]]:
    """Upper intersection (x, y^2) of two circles centered on the real axis,
    None unless they cross transversely off the axis."""
    if c1 == c2:
        return None
    x = (r1_sq - r2_sq + c2 * c2 - c1 * c1) / (2 * (c2 - c1))
    y_sq = r1_sq - (x - c1) * (x - c1)
    if y_sq <= 0:
        return None
    return x, y_sq


def boundary_arcs(tol: float = 1e-9) -> List[BoundaryArc]:
    """The 26 boundary arcs, each clipped to where its constraint is active.

    Candidate endpoints are the exact pairwise circle intersections (plus
    the two real-axis points of each circle); the surviving interval per
    circle is found by testing interval midpoints against all other
    constraints.  Exactly one interval per constraint must survive.
    """
    cons = reduced_constraints()
    circles = [con.circle() for con in cons]
    arcs: List[BoundaryArc] = []
    for i, con in enumerate(cons):
        c1, r1, _side = circles[i]
        r1_sq = r1 * r1
        # exact candidate points keyed by (x, y_sq), provenance merged
        candidates = {}

        def add(x: Fraction, y_sq: Fraction, source: str):
            key = (x, y_sq)
            if key in candidates:
                if source not in candidates[key]:
                    candidates[key].append(source)
            else:
                candidates[key] = [source]

        add(c1 - r1, Fraction(0), "real-axis")
        add(c1 + r1, Fraction(0), "real-axis")
        for j, other in enumerate(cons):
            if j == i:
                continue
            c2, r2, _ = circles[j]
            hit = _circle_intersection_upper(c1, r1_sq, c2, r2 * r2)
            if hit is not None:
                add(hit[0], hit[1], other.label())
        endpoints = []
        for (x, y_sq), sources in candidates.items():
            angle = math.atan2(math.sqrt(float(y_sq)), float(x - c1))
            endpoints.append(ArcEndpoint(x, y_sq, angle, tuple(sorted(sources))))
        endpoints.sort(key=lambda e: e.angle)

        fc, fr = float(c1), float(r1)
        others = [cons[j] for j in range(len(cons)) if j != i]

        def gap_feasible(theta: float) -> bool:
            px = fc + fr * math.cos(theta)
            py = fr * math.sin(theta)
            if py <= 0:
                return False
            return all(float(o.margin(px, py)) >= -tol for o in others)

        runs = []
        current: Optional[Tuple[int, int]] = None
        for k in range(len(endpoints) - 1):
            mid = (endpoints[k].angle + endpoints[k + 1].angle) / 2
            if gap_feasible(mid):
                current = (current[0], k + 1) if current else (k, k + 1)
            else:
                if current:
                    runs.append(current)
                current = None
        if current:
            runs.append(current)
        if len(runs) != 1:
            raise ArithmeticError(
                f"constraint {con.label()} contributes {len(runs)} arcs, expected 1"
            )
        lo, hi = runs[0]
        arcs.append(BoundaryArc(con, c1, r1, endpoints[lo], endpoints[hi]))
    return arcs


@dataclass(frozen=True)
class ArgumentBound:
    """Extremal argument over the region with its exact witness corner."""

    angle: float
    max_angle: float
    tan_sq: Fraction
    witness: ComplexScalar


def min_argument() -> ArgumentBound:
    """Smallest argument over the region: the corner where the circles
    |3*tau - 2| = 1/4 and |4*tau - 3| = 1/4 cross."""
    c1, r1, _ = RegionConstraint("direct", 3, -2).circle()
    c2, r2, _ = RegionConstraint("direct", 4, -3).circle()
    hit = _circle_intersection_upper(c1, r1 * r1, c2, r2 * r2)
    if hit is None:
        raise ArithmeticError("extremal circles do not cross")
    x, y_sq = hit
    witness = ComplexScalar.from_quad(QuadExt(x), exact_sqrt(y_sq))
    angle = math.atan2(math.sqrt(float(y_sq)), float(x))
    return ArgumentBound(
        angle=angle,
        max_angle=math.pi - angle,
        tan_sq=y_sq / (x * x),
        witness=witness,
    )


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def render_svg(resolution: int = 400) -> str:
    """Deterministic SVG of the region boundary: 26 constraint arcs, the
    unit circle and imaginary axis for reference, and the witness corner."""
    if resolution < 100:
        raise ValueError("resolution must be at least 100")
    x_lo, x_hi = -4.8, 4.8
    y_lo, y_hi = -0.3, 4.8
    scale = resolution / (x_hi - x_lo)
    width = resolution
    height = int(round((y_hi - y_lo) * scale))

    def sx(x: float) -> float:
        return (x - x_lo) * scale

    def sy(y: float) -> float:
        return (y_hi - y) * scale

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        # reference geometry
        f'<line class="reference-axis" x1="{_fmt(sx(x_lo))}" y1="{_fmt(sy(0.0))}" '
        f'x2="{_fmt(sx(x_hi))}" y2="{_fmt(sy(0.0))}" stroke="#999999" stroke-width="1"/>',
        f'<line class="reference-imaginary-axis" x1="{_fmt(sx(0.0))}" y1="{_fmt(sy(0.0))}" '
        f'x2="{_fmt(sx(0.0))}" y2="{_fmt(sy(y_hi))}" stroke="#999999" stroke-width="1" '
        'stroke-dasharray="4 3"/>',
        f'<circle class="reference-unit-circle" cx="{_fmt(sx(0.0))}" cy="{_fmt(sy(0.0))}" '
        f'r="{_fmt(scale)}" fill="none" stroke="#cccccc" stroke-width="1" '
        'stroke-dasharray="2 3"/>',
    ]
    for arc in boundary_arcs():
        c, r = float(arc.center), float(arc.radius)
        th0, th1 = arc.start.angle, arc.end.angle
        x0, y0 = c + r * math.cos(th0), r * math.sin(th0)
        x1, y1 = c + r * math.cos(th1), r * math.sin(th1)
        large = 1 if (th1 - th0) > math.pi else 0
        rr = r * scale
        parts.append(
            f'<path class="constraint-arc" d="M {_fmt(sx(x0))} {_fmt(sy(y0))} '
            f'A {_fmt(rr)} {_fmt(rr)} 0 {large} 0 {_fmt(sx(x1))} {_fmt(sy(y1))}" '
            'fill="none" stroke="#1f4e9c" stroke-width="1.5"/>'
        )
    bound = min_argument()
    wx, wy = float(bound.witness.re), float(bound.witness.im)
    parts.append(
        f'<circle class="witness-point" cx="{_fmt(sx(wx))}" cy="{_fmt(sy(wy))}" r="3" '
        'fill="#c02020"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
