"""Moebius transformations and geodesic planes in the upper half-space model.

Elements of PSL(2, C) are unit-determinant 2x2 matrices identified with
their negatives.  A totally geodesic plane is represented purely by its
ideal boundary, a circle or line in the extended complex plane, stored as a
Hermitian triple: the equation

    A*|z|^2 + B*z + conj(B)*conj(z) + C = 0,   A, C real, B = bx + by*i.

Disjointness, ideal tangency, and dihedral angles between planes all reduce
to comparing the inversive product N = 2*(bx1*bx2 + by1*by2) - A1*C2 - A2*C1
against the two discriminants D_i = bx_i^2 + by_i^2 - A_i*C_i, with no 3D
geometry and no floating point on exact backends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .scalars import ComplexScalar, QuadExt


class _Infinity:
    """The point at infinity of the extended complex plane (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()

IdealPoint = Union[ComplexScalar, _Infinity]


def is_infinity(point) -> bool:
    return point is INFINITY


def as_point(value) -> IdealPoint:
    """Coerce ints, Fractions, QuadExts, complexes, or 'inf' to an ideal point."""
    if value is INFINITY or isinstance(value, _Infinity):
        return INFINITY
    if isinstance(value, str) and value in ("inf", "infinity"):
        return INFINITY
    if isinstance(value, ComplexScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ComplexScalar.from_rational(value)
    if isinstance(value, QuadExt):
        return ComplexScalar.from_quad(value, QuadExt(0))
    if isinstance(value, complex):
        return ComplexScalar.from_complex(value)
    if isinstance(value, float):
        return ComplexScalar.from_float(value)
    raise TypeError(f"cannot interpret {value!r} as an ideal point")


def _cs(re, im=0) -> ComplexScalar:
    """Build a ComplexScalar from two real scalars of matching exactness."""
    if isinstance(re, float) or isinstance(im, float):
        return ComplexScalar.from_float(float(re), float(im))
    if isinstance(re, QuadExt) or isinstance(im, QuadExt):
        re = re if isinstance(re, QuadExt) else QuadExt(re)
        im = im if isinstance(im, QuadExt) else QuadExt(im)
        return ComplexScalar.from_quad(re, im)
    return ComplexScalar.from_rational(re, im)


def _is_zero(value, tol: float = 0.0) -> bool:
    if isinstance(value, float):
        return abs(value) <= (tol if tol else 1e-12)
    return value == 0


class GeodesicPlane:
    """Ideal boundary of a totally geodesic plane: a circle or line.

    Stored as the Hermitian triple (A, bx, by, C); a line iff A == 0.  The
    triple is only defined up to a nonzero real scale, so equality and
    hashing go through a canonical rescaling.
    """

    __slots__ = ("A", "bx", "by", "c")

    def __init__(self, A, bx, by, c) -> None:
        self.A, self.bx, self.by, self.c = A, bx, by, c
        if self.discriminant() <= 0:
            raise ValueError("degenerate plane: nonpositive discriminant")

    # -- constructors -----------------------------------------------------

    @classmethod
    def line(cls, point, direction) -> "GeodesicPlane":
        """Line through a finite point with a nonzero complex direction."""
        p = as_point(point)
        t = as_point(direction)
        if is_infinity(p) or is_infinity(t):
            raise ValueError("line needs a finite point and direction")
        if not t:
            raise ValueError("line direction must be nonzero")
        tx, ty = t.re, t.im
        px, py = p.re, p.im
        return cls(0 * tx, ty, tx, 2 * (py * tx - px * ty))

    @classmethod
    def circle(cls, center, radius=None, radius_sq=None) -> "GeodesicPlane":
        """Circle from center and radius (or exact squared radius)."""
        w = as_point(center)
        if is_infinity(w):
            raise ValueError("circle center must be finite")
        if radius_sq is None:
            if radius is None:
                raise ValueError("radius or radius_sq required")
            radius_sq = radius * radius
        if isinstance(radius_sq, int):
            radius_sq = Fraction(radius_sq)
        one = 1.0 if isinstance(radius_sq, float) else Fraction(1)
        wx, wy = w.re, w.im
        return cls(one, -wx, wy, wx * wx + wy * wy - radius_sq)

    # -- basic geometry ----------------------------------------------------

    def discriminant(self):
        """bx^2 + by^2 - A*C; positive for every genuine circle or line."""
        return self.bx * self.bx + self.by * self.by - self.A * self.c

    @property
    def is_line(self) -> bool:
        return _is_zero(self.A)

    def center(self) -> ComplexScalar:
        if self.is_line:
            raise ValueError("a line has no center")
        return _cs(-self.bx / self.A, self.by / self.A)

    def radius_sq(self):
        if self.is_line:
            raise ValueError("a line has no radius")
        return self.discriminant() / (self.A * self.A)

    def radius(self) -> float:
        return math.sqrt(float(self.radius_sq()))

    def direction(self) -> ComplexScalar:
        """Unit-free direction vector of a line."""
        if not self.is_line:
            raise ValueError("not a line")
        return _cs(self.by, self.bx)

    def evaluate(self, point):
        """Left-hand side of the defining equation at a finite point."""
        p = as_point(point)
        if is_infinity(p):
            raise ValueError("evaluate needs a finite point")
        x, y = p.re, p.im
        return self.A * (x * x + y * y) + 2 * (self.bx * x - self.by * y) + self.c

    def contains(self, point, tol: float = 0.0) -> bool:
        p = as_point(point)
        if is_infinity(p):
            return _is_zero(self.A, tol)
        return _is_zero(self.evaluate(p), tol)

    # -- canonical form ------------------------------------------------------

    def normalized(self) -> Tuple:
        coeffs = (self.A, self.bx, self.by, self.c)
        lead = next((v for v in coeffs if not _is_zero(v)), None)
        if lead is None:
            raise ValueError("zero plane")
        out = tuple(v / lead for v in coeffs)
        return tuple(v.as_rational() if isinstance(v, QuadExt) and v.is_rational else v for v in out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeodesicPlane):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self) -> int:
        return hash(self.normalized())

    def __repr__(self) -> str:
        if self.is_line:
            return f"GeodesicPlane.line(bx={self.bx}, by={self.by}, c={self.c})"
        return f"GeodesicPlane.circle(center={self.center()}, radius_sq={self.radius_sq()})"


def plane_through(p, q, r) -> GeodesicPlane:
    """Unique circle or line through three distinct ideal points."""
    pts = [as_point(p), as_point(q), as_point(r)]
    for i in range(3):
        for j in range(i + 1, 3):
            a, b = pts[i], pts[j]
            if (a is INFINITY and b is INFINITY) or (
                a is not INFINITY and b is not INFINITY and a == b
            ):
                raise ValueError("points must be pairwise distinct")
    finite = [pt for pt in pts if not is_infinity(pt)]
    if len(finite) == 2:
        return GeodesicPlane.line(finite[0], finite[1] - finite[0])
    (px, py), (qx, qy), (rx, ry) = [(pt.re, pt.im) for pt in finite]
    det = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    if _is_zero(det):
        return GeodesicPlane.line(finite[0], finite[1] - finite[0])
    s1 = (qx * qx + qy * qy) - (px * px + py * py)
    s2 = (rx * rx + ry * ry) - (px * px + py * py)
    wx = (s1 * (ry - py) - s2 * (qy - py)) / (2 * det)
    wy = ((qx - px) * s2 - (rx - px) * s1) / (2 * det)
    r_sq = (px - wx) * (px - wx) + (py - wy) * (py - wy)
    return GeodesicPlane.circle(_cs(wx, wy), radius_sq=r_sq)


@dataclass(frozen=True)
class PlaneRelation:
    """Relation of two geodesic planes in hyperbolic 3-space."""

    kind: str  # "disjoint" | "ideal-tangent" | "intersect"
    angle: Optional[float] = None  # dihedral angle in (0, pi/2] when intersecting
    cos_sq: object = None  # exact cos^2(angle) when the backend allows


def _inversive_data(p: GeodesicPlane, q: GeodesicPlane):
    n = 2 * (p.bx * q.bx + p.by * q.by) - p.A * q.c - q.A * p.c
    return n, p.discriminant(), q.discriminant()


def planes_relation(p: GeodesicPlane, q: GeodesicPlane, tol: float = 1e-9) -> PlaneRelation:
    """Classify two distinct planes as disjoint, ideal-tangent, or crossing."""
    if p == q:
        raise ValueError("planes coincide")
    n, d1, d2 = _inversive_data(p, q)
    lhs = n * n
    rhs = 4 * d1 * d2
    if isinstance(lhs, float) or isinstance(rhs, float):
        scale = max(1.0, abs(float(lhs)), abs(float(rhs)))
        if abs(float(lhs) - float(rhs)) <= tol * scale:
            return PlaneRelation("ideal-tangent")
        if float(lhs) > float(rhs):
            return PlaneRelation("disjoint")
        cos_sq = float(lhs) / float(rhs)
        return PlaneRelation("intersect", angle=math.acos(math.sqrt(cos_sq)), cos_sq=cos_sq)
    if lhs == rhs:
        return PlaneRelation("ideal-tangent")
    if lhs > rhs:
        return PlaneRelation("disjoint")
    cos_sq = lhs / rhs
    if isinstance(cos_sq, QuadExt) and cos_sq.is_rational:
        cos_sq = cos_sq.as_rational()
    if cos_sq == 0:
        return PlaneRelation("intersect", angle=math.pi / 2, cos_sq=cos_sq)
    return PlaneRelation("intersect", angle=math.acos(math.sqrt(float(cos_sq))), cos_sq=cos_sq)


def ideal_tangency_point(p: GeodesicPlane, q: GeodesicPlane, tol: float = 1e-9) -> IdealPoint:
    """The single ideal point shared by two ideal-tangent planes."""
    rel = planes_relation(p, q, tol)
    if rel.kind != "ideal-tangent":
        raise ValueError(f"planes are {rel.kind}, not ideal-tangent")
    if p.is_line and q.is_line:
        return INFINITY
    if p.is_line or q.is_line:
        line, circ = (p, q) if p.is_line else (q, p)
        wx, wy = -circ.bx / circ.A, circ.by / circ.A
        f = 2 * (line.bx * wx - line.by * wy) + line.c
        nn = line.bx * line.bx + line.by * line.by
        return _cs(wx - f * line.bx / (2 * nn), wy + f * line.by / (2 * nn))
    # two circles: radical axis meets the line of centers in a rational point
    b1x, b1y, c1 = p.bx / p.A, p.by / p.A, p.c / p.A
    b2x, b2y, c2 = q.bx / q.A, q.by / q.A, q.c / q.A
    e, f, g = b1x - b2x, b1y - b2y, c1 - c2
    w1x, w1y = -b1x, b1y
    w2x, w2y = -b2x, b2y
    tx, ty = w2x - w1x, w2y - w1y
    h = 2 * (w1y * tx - w1x * ty)
    det = -4 * e * tx + 4 * f * ty
    if _is_zero(det):
        raise ValueError("tangency point is not determined (concentric circles)")
    x = (2 * g * tx - 2 * f * h) / det
    y = (-2 * e * h + 2 * g * ty) / det
    return _cs(x, y)


class MoebiusElement:
    """Element of PSL(2, C): a unit-determinant matrix identified with its negative."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, tol: float = 1e-9) -> None:
        entries = [self._coerce(v) for v in (a, b, c, d)]
        if any(e.backend == "float" for e in entries):
            entries = [
                e if e.backend == "float" else ComplexScalar.from_complex(e.to_complex())
                for e in entries
            ]
        self.a, self.b, self.c, self.d = entries
        det = self.a * self.d - self.b * self.c
        if det.backend == "float":
            if abs(det.to_complex() - 1) > tol:
                raise ValueError(f"determinant {det.to_complex()} is not 1")
        elif det != ComplexScalar.from_rational(1):
            raise ValueError(f"determinant {det} is not 1")

    @staticmethod
    def _coerce(value) -> ComplexScalar:
        if isinstance(value, ComplexScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return ComplexScalar.from_rational(value)
        if isinstance(value, QuadExt):
            return ComplexScalar.from_quad(value, QuadExt(0))
        if isinstance(value, (float, complex)):
            return ComplexScalar.from_complex(complex(value))
        raise TypeError(f"cannot interpret {value!r} as a matrix entry")

    @classmethod
    def identity(cls) -> "MoebiusElement":
        return cls(1, 0, 0, 1)

    def entries(self) -> Tuple[ComplexScalar, ComplexScalar, ComplexScalar, ComplexScalar]:
        return (self.a, self.b, self.c, self.d)

    def canonical_entries(self) -> Tuple[ComplexScalar, ...]:
        """Sign-normalized representative: first nonzero entry has positive
        real part, with a zero real part broken by positive imaginary part."""
        ents = self.entries()
        for e in ents:
            if not e:
                continue
            re, im = e.re, e.im
            if isinstance(re, float):
                if abs(re) <= 1e-12:
                    flip = im < 0
                else:
                    flip = re < 0
            else:
                flip = re < 0 or (re == 0 and im < 0)
            if flip:
                return tuple(-v for v in ents)
            return ents
        raise ValueError("zero matrix")

    def __eq__(self, other) -> bool:
        if not isinstance(other, MoebiusElement):
            return NotImplemented
        return self.canonical_entries() == other.canonical_entries()

    def __hash__(self) -> int:
        return hash(self.canonical_entries())

    def __mul__(self, other: "MoebiusElement") -> "MoebiusElement":
        if not isinstance(other, MoebiusElement):
            return NotImplemented
        return MoebiusElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusElement":
        return MoebiusElement(self.d, -self.b, -self.c, self.a)

    def trace(self) -> ComplexScalar:
        return self.a + self.d

    def apply(self, point) -> IdealPoint:
        """Moebius action on the extended complex plane."""
        p = as_point(point)
        if is_infinity(p):
            if not self.c:
                return INFINITY
            return self.a / self.c
        denom = self.c * p + self.d
        if not denom:
            return INFINITY
        return (self.a * p + self.b) / denom

    def apply_to_plane(self, plane: GeodesicPlane) -> GeodesicPlane:
        """Image of a geodesic plane: Hermitian triple pulled back by the inverse."""
        inv = self.inverse()
        h11 = _cs(plane.A)
        h12 = _cs(plane.bx, -plane.by)
        h21 = _cs(plane.bx, plane.by)
        h22 = _cs(plane.c)
        n11, n12, n21, n22 = inv.entries()
        m11, m12, m21, m22 = n11.conj(), n21.conj(), n12.conj(), n22.conj()
        t11 = m11 * h11 + m12 * h21
        t12 = m11 * h12 + m12 * h22
        t21 = m21 * h11 + m22 * h21
        t22 = m21 * h12 + m22 * h22
        g11 = t11 * n11 + t12 * n21
        g21 = t21 * n11 + t22 * n21
        g22 = t21 * n12 + t22 * n22
        return GeodesicPlane(g11.re, g21.re, g21.im, g22.re)

    def __repr__(self) -> str:
        return f"MoebiusElement({self.a}, {self.b}, {self.c}, {self.d})"


def classify_element(g: MoebiusElement, tol: float = 1e-9) -> str:
    """Trace classification: identity, parabolic, elliptic, or loxodromic."""
    tr = g.trace()
    t2 = tr * tr
    if t2.backend == "float":
        ca, cb, cc, cd = (e.to_complex() for e in g.canonical_entries())
        if abs(ca - 1) <= tol and abs(cb) <= tol and abs(cc) <= tol and abs(cd - 1) <= tol:
            return "identity"
        if abs(t2.to_complex() - 4) <= tol:
            return "parabolic"
        if abs(t2.im) <= tol and -tol <= t2.re < 4:
            return "elliptic"
        return "loxodromic"
    if g == MoebiusElement.identity():
        return "identity"
    four = ComplexScalar.from_rational(4)
    if t2 == four:
        return "parabolic"
    if not t2.im and 0 <= t2.re < 4:
        return "elliptic"
    return "loxodromic"


@dataclass
class OctahedronReport:
    """Outcome of checking that eight planes bound a right-angled ideal octahedron."""

    ok: bool
    vertices: List[IdealPoint]
    dihedral: Optional[float]
    relation_counts: dict


def _point_key(point: IdealPoint) -> Tuple[float, float, float]:
    if is_infinity(point):
        return (1.0, 0.0, 0.0)
    return (0.0, float(point.re), float(point.im))


def verify_octahedron(planes: Sequence[GeodesicPlane], tol: float = 1e-9) -> OctahedronReport:
    """Check the octahedron conditions: 12 orthogonal pairs, 12 ideal
    tangencies meeting in 6 vertices, 4 disjoint pairs, every vertex on four
    planes and every plane through three vertices."""
    planes = list(planes)
    if len(planes) != 8:
        raise ValueError("exactly eight planes required")
    if len(set(planes)) != 8:
        raise ValueError("planes must be distinct")

    counts = {"intersect": 0, "ideal-tangent": 0, "disjoint": 0, "oblique": 0}
    tangent_pairs = []
    for i in range(8):
        for j in range(i + 1, 8):
            rel = planes_relation(planes[i], planes[j], tol)
            if rel.kind == "intersect":
                right = (
                    rel.cos_sq == 0
                    if not isinstance(rel.cos_sq, float)
                    else abs(rel.cos_sq) <= tol
                )
                counts["intersect" if right else "oblique"] += 1
            else:
                counts[rel.kind] += 1
                if rel.kind == "ideal-tangent":
                    tangent_pairs.append((i, j))

    pattern_ok = (
        counts["intersect"] == 12
        and counts["ideal-tangent"] == 12
        and counts["disjoint"] == 4
        and counts["oblique"] == 0
    )
    if not pattern_ok:
        return OctahedronReport(False, [], None, counts)

    vertices: List[IdealPoint] = []
    for i, j in tangent_pairs:
        pt = ideal_tangency_point(planes[i], planes[j], tol)
        if not any(_same_point(pt, v, tol) for v in vertices):
            vertices.append(pt)
    if len(vertices) < 6:
        raise ValueError("degenerate plane set: fewer than 6 distinct vertices")
    vertices.sort(key=_point_key)
    if len(vertices) != 6:
        return OctahedronReport(False, vertices, None, counts)

    for v in vertices:
        if sum(1 for p in planes if p.contains(v, tol)) != 4:
            return OctahedronReport(False, vertices, None, counts)
    for p in planes:
        if sum(1 for v in vertices if p.contains(v, tol)) != 3:
            return OctahedronReport(False, vertices, None, counts)
    return OctahedronReport(True, vertices, math.pi / 2, counts)


def _same_point(p: IdealPoint, q: IdealPoint, tol: float) -> bool:
    if is_infinity(p) or is_infinity(q):
        return is_infinity(p) and is_infinity(q)
    if p.backend == "float" or q.backend == "float":
        return p.close_to(q, tol)
    return p == q


def octahedron_plane_family(height=1) -> List[GeodesicPlane]:
    """Eight-plane arrangement: four vertical planes over the lines Im=0,
    Re=0, Re=1, Im=height and four hemispheres over circles through the
    rectangle midpoint (1 + height*i)/2.  Bounds an ideal octahedron exactly
    when height == 1."""
    if isinstance(height, float):
        zero: object = 0.0
        one: object = 1.0
        half = 0.5
    else:
        zero = Fraction(0)
        one = Fraction(1)
        half = Fraction(1, 2)
        height = Fraction(height)
    p0 = _cs(zero, zero)
    p1 = _cs(one, zero)
    top0 = _cs(zero, height)
    top1 = _cs(one, height)
    mid = _cs(half, height * half)
    return [
        GeodesicPlane.line(p0, p1),  # Im = 0
        GeodesicPlane.line(p0, top0),  # Re = 0
        GeodesicPlane.line(p1, top0),  # Re = 1 (vertical direction)
        GeodesicPlane.line(top0, p1),  # Im = height
        plane_through(p0, p1, mid),
        plane_through(p0, top0, mid),
        plane_through(top1, p1, mid),
        plane_through(top1, top0, mid),
    ]
