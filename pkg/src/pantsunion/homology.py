"""Integer homology machinery for the catalog manifolds.

Boundary classes of properly embedded surfaces are tracked per cusp as
(meridian, longitude) coefficient pairs.  The case enumerations that feed
the classification arguments are reproduced by brute force over small
integer boxes, and Thurston norms are evaluated exactly, as the Minkowski
gauge of a catalog norm ball, by a rational simplex solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

__all__ = [
    "CATALOG_RANKS",
    "IntegerClass",
    "BoundaryClass",
    "NormPolytope",
    "boundary_class",
    "slope_intersection",
    "enumerate_whi3",
    "Tet2Enumeration",
    "enumerate_tet2",
    "tet2_parity_filter",
    "tet2_unfilled_boundary_report",
    "m6_parity_obstruction",
    "thurston_norm",
    "catalog_norm_ball",
    "m4_cube_coordinates",
    "l1_norm",
    "linf_norm",
    "m3_norm",
]

# Rank of the relevant relative second homology group, in the named basis.
CATALOG_RANKS = {
    "W3": 4,
    "M4": 4,
    "M6": 6,
    "W2": 3,
    "WPrime2": 3,
    "M3": 3,
    "ChainFilled": 2,
}

# Manifolds with a boundary-class formula, and their cusp counts.
_CUSP_COUNTS = {"W3": 4, "M4": 4, "M6": 6}


def _as_int(value):
    n = int(value)
    if n != value:
        raise ValueError(f"expected an integer, got {value!r}")
    return n


@dataclass(frozen=True)
class IntegerClass:
    """An integer homology class in the named basis of a catalog manifold.

    The coefficient vector length must match the manifold's basis rank
    (W3 and M4 use four coefficients a, b, c, d; M6 uses six).
    """

    manifold: str
    coefficients: tuple

    def __post_init__(self):
        if self.manifold not in CATALOG_RANKS:
            raise ValueError(f"unknown catalog manifold {self.manifold!r}")
        coeffs = tuple(_as_int(c) for c in self.coefficients)
        rank = CATALOG_RANKS[self.manifold]
        if len(coeffs) != rank:
            raise ValueError(
                f"{self.manifold} classes take {rank} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coefficients", coeffs)

    def __add__(self, other):
        if not isinstance(other, IntegerClass) or other.manifold != self.manifold:
            return NotImplemented
        summed = tuple(x + y for x, y in zip(self.coefficients, other.coefficients))
        return IntegerClass(self.manifold, summed)

    def __neg__(self):
        return IntegerClass(self.manifold, tuple(-x for x in self.coefficients))

    def __sub__(self, other):
        if not isinstance(other, IntegerClass) or other.manifold != self.manifold:
            return NotImplemented
        return self + (-other)

    def scaled(self, k):
        k = _as_int(k)
        return IntegerClass(self.manifold, tuple(k * x for x in self.coefficients))


@dataclass(frozen=True)
class BoundaryClass:
    """Per-cusp (meridian, longitude) coefficients of a surface boundary."""

    manifold: str
    pairs: tuple

    def __post_init__(self):
        if self.manifold not in _CUSP_COUNTS:
            raise ValueError(f"no boundary bookkeeping for {self.manifold!r}")
        pairs = tuple((_as_int(m), _as_int(l)) for m, l in self.pairs)
        cusps = _CUSP_COUNTS[self.manifold]
        if len(pairs) != cusps:
            raise ValueError(f"{self.manifold} has {cusps} cusps, got {len(pairs)} pairs")
        object.__setattr__(self, "pairs", pairs)

    def __add__(self, other):
        if not isinstance(other, BoundaryClass) or other.manifold != self.manifold:
            return NotImplemented
        summed = tuple(
            (m1 + m2, l1 + l2)
            for (m1, l1), (m2, l2) in zip(self.pairs, other.pairs)
        )
        return BoundaryClass(self.manifold, summed)

    def describe(self) -> str:
        """Render as a signed sum of meridian and longitude symbols."""
        terms = []
        for i, (m, l) in enumerate(self.pairs, start=1):
            for coeff, symbol in ((m, f"m{i}"), (l, f"l{i}")):
                if coeff:
                    terms.append((coeff, symbol))
        if not terms:
            return "0"
        parts = []
        for k, (coeff, symbol) in enumerate(terms):
            body = symbol if abs(coeff) == 1 else f"{abs(coeff)}*{symbol}"
            if k == 0:
                parts.append(body if coeff > 0 else "-" + body)
            else:
                parts.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(parts)


def boundary_class(c: IntegerClass) -> BoundaryClass:
    """Boundary of the surface representing c, one coefficient pair per cusp.

    Supported manifolds are W3, M4, and M6; each uses the fixed meridian
    and longitude orientations of its standard diagram.
    """
    if c.manifold == "M4":
        a, b, cc, d = c.coefficients
        pairs = ((b - d, a), (a + cc, b), (b + d, cc), (-a + cc, d))
    elif c.manifold == "W3":
        a, b, cc, d = c.coefficients
        pairs = ((0, a), (-cc - d, b), (-b - d, cc), (-b - cc, d))
    elif c.manifold == "M6":
        a1, a2, a3, a4, a5, a6 = c.coefficients
        pairs = (
            (a2 - a6, a1),
            (a1 - a3, a2),
            (a4 - a2, a3),
            (a3 - a5, a4),
            (a6 - a4, a5),
            (a5 - a1, a6),
        )
    else:
        raise ValueError(f"no boundary-class formula for {c.manifold!r}")
    return BoundaryClass(c.manifold, pairs)


def slope_intersection(p1, q1, p2, q2) -> int:
    """Geometric intersection number of two slopes on a torus, |p1*q2 - q1*p2|."""
    p1, q1, p2, q2 = (_as_int(v) for v in (p1, q1, p2, q2))
    if (p1, q1) == (0, 0) or (p2, q2) == (0, 0):
        raise ValueError("slope vectors must be nonzero")
    return abs(p1 * q2 - q1 * p2)


def enumerate_whi3() -> frozenset:
    """Candidate class triples (b, c, d) in the four-cusp chain complement.

    The first basis coefficient is forced to zero, so candidates live in a
    three dimensional box.  Each of the six sums b, c, d, c+d, b+d, b+c is
    capped at 1 in absolute value by the pairwise intersection bounds, and
    b + c + d must be odd.  The survivors are exactly the six signed unit
    vectors, and the output is unchanged by any box of radius >= 2.
    """
    return _enumerate_whi3_box(2)


def _enumerate_whi3_box(box_bound: int) -> frozenset:
    if box_bound < 2:
        raise ValueError("box bound must be at least 2")
    rng = range(-box_bound, box_bound + 1)
    found = set()
    for b, c, d in product(rng, repeat=3):
        if (b + c + d) % 2 == 0:
            continue
        caps = (b, c, d, c + d, b + d, b + c)
        if max(abs(v) for v in caps) <= 1:
            found.add((b, c, d))
    return frozenset(found)


def _tet2_caps_ok(a, b, c, d) -> bool:
    return (
        abs(b) <= 2
        and abs(a - b + c) <= 2
        and abs(b + d) <= 2
        and abs(b - 2 * c + d) <= 2
        and abs(d) <= 2
        and abs(a - c + d) <= 2
    )


@dataclass(frozen=True)
class Tet2Enumeration:
    """Candidate classes (a, b, c, d) after filling the first cusp, split by case.

    zero_case holds the tuples whose boundary misses the filled cusp, i.e.
    (b - d, a) = (0, 0); these keep all three ends, so their coefficient sum
    is required to be odd.  nonzero_case holds the raw survivors of the six
    intersection caps with (b - d, a) != (0, 0), normalized to b - d >= 0;
    no parity filter is applied there, see tet2_parity_filter.
    """

    search_bound: int
    zero_case: frozenset
    nonzero_case: frozenset


def enumerate_tet2(search_bound: int = 3) -> Tet2Enumeration:
    """Brute-force scan of the six intersection caps over a box of the given radius."""
    if search_bound < 3:
        raise ValueError("search bound must be at least 3")
    rng = range(-search_bound, search_bound + 1)
    zero, nonzero = set(), set()
    for a, b, c, d in product(rng, repeat=4):
        if not _tet2_caps_ok(a, b, c, d):
            continue
        if (b - d, a) == (0, 0):
            if (a + b + c + d) % 2 == 1:
                zero.add((a, b, c, d))
        elif b - d >= 0:
            nonzero.add((a, b, c, d))
    return Tet2Enumeration(search_bound, frozenset(zero), frozenset(nonzero))


def tet2_parity_filter(tuples, p, q) -> frozenset:
    """Keep the candidate classes compatible with the (p, q) filling slope.

    A surviving tuple's coefficient pair (b - d, a) on the filled cusp must
    be a positive integer multiple k of (p, q), and k must be odd exactly
    when the coefficient sum a + b + c + d is even: capping off k boundary
    components leaves a sphere with an odd number of ends only under that
    parity.  Tuples with no boundary on the filled cusp are dropped; they
    belong to the zero case.  The slope must be coprime with p >= 0.
    """
    p, q = _as_int(p), _as_int(q)
    if (p, q) == (0, 0) or p < 0 or math.gcd(p, q) != 1:
        raise ValueError("filling slope must be a coprime pair with p >= 0")
    kept = set()
    for a, b, c, d in tuples:
        s = b - d
        if (s, a) == (0, 0):
            continue
        if p == 0:
            # slope is the longitude; q is +1 or -1 here
            if s != 0:
                continue
            k = abs(a * q)
        else:
            if s % p != 0:
                continue
            k = s // p
            if k <= 0 or a != k * q:
                continue
        if (k % 2 == 1) == ((a + b + c + d) % 2 == 0):
            kept.add((a, b, c, d))
    return frozenset(kept)


def tet2_unfilled_boundary_report(coefficients) -> dict:
    """Component-count floors on the three cusps untouched by the filling.

    The boundary class on a cusp with coefficient pair (m, l) needs at
    least gcd(|m|, |l|) curves to represent it.  The report collects the
    pairs and their floors; it does not decide whether the total is
    compatible with a 3-punctured sphere, that step is left to the reader.
    """
    cls = IntegerClass("M4", tuple(coefficients))
    pairs = boundary_class(cls).pairs
    cusps = {}
    total = 0
    for cusp in (2, 3, 4):
        m, l = pairs[cusp - 1]
        floor = math.gcd(m, l)
        cusps[f"cusp{cusp}"] = {"pair": (m, l), "min_components": floor}
        total += floor
    return {
        "coefficients": cls.coefficients,
        "filled_cusp_pair": pairs[0],
        "cusps": cusps,
        "min_total_components": total,
    }


def m6_parity_obstruction(c: IntegerClass) -> dict:
    """Signed sum of the eight boundary terms on cusps 2, 3, 5, and 6.

    For a class a1..a6 in the six-cusp chain complement, the meridian and
    longitude coefficients on those four cusps add up to 2*(a5 + a6), which
    is always even.  A 3-punctured sphere would need the corresponding sum
    of absolute values to be 1 or 3, so no class is realized by one.
    """
    if c.manifold != "M6":
        raise ValueError(f"the parity obstruction is specific to M6, got {c.manifold!r}")
    pairs = boundary_class(c).pairs
    total = sum(m + l for m, l in (pairs[1], pairs[2], pairs[4], pairs[5]))
    return {"sum": total, "even": total % 2 == 0}


@dataclass(frozen=True)
class NormPolytope:
    """A centrally symmetric polytope given by its vertices, the unit ball of a norm.

    The basis string documents what the ambient coordinates mean for the
    manifold at hand.  Central symmetry is enforced; full dimensionality
    holds for every catalog ball and can be checked via is_full_dimensional.
    """

    manifold: str
    vertices: tuple
    basis: str = field(default="", compare=False)

    def __post_init__(self):
        verts = tuple(tuple(_as_int(x) for x in v) for v in self.vertices)
        if not verts:
            raise ValueError("a norm ball needs at least one vertex")
        dim = len(verts[0])
        if dim == 0 or any(len(v) != dim for v in verts):
            raise ValueError("vertices must be nonempty vectors of equal length")
        vset = set(verts)
        for v in verts:
            if tuple(-x for x in v) not in vset:
                raise ValueError("vertex set must be centrally symmetric")
        object.__setattr__(self, "vertices", verts)

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    def rank(self) -> int:
        """Dimension of the linear span of the vertices, computed exactly."""
        rows = [[Fraction(x) for x in v] for v in self.vertices]
        r = 0
        for col in range(self.dimension):
            piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            head = rows[r][col]
            for i in range(r + 1, len(rows)):
                if rows[i][col]:
                    f = rows[i][col] / head
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            r += 1
            if r == self.dimension:
                break
        return r

    def is_full_dimensional(self) -> bool:
        return self.rank() == self.dimension


def _minimize_total_weight(columns, target):
    """Exact LP: minimize sum(t) subject to sum(t[i]*columns[i]) = target, t >= 0.

    Dense two-phase simplex over Fractions.  Bland's rule picks both the
    entering column and the leaving row, which rules out cycling.  Returns
    None when the system is infeasible.
    """
    n = len(columns)
    rows, rhs = [], []
    for j in range(len(target)):
        row = [Fraction(columns[i][j]) for i in range(n)]
        b = Fraction(target[j])
        if b < 0:
            row, b = [-x for x in row], -b
        rows.append(row)
        rhs.append(b)
    # artificial identity block on the right
    for j, row in enumerate(rows):
        row.extend(Fraction(1 if j == jj else 0) for jj in range(len(rows)))
    basis = list(range(n, n + len(rows)))

    def pivot(col, lead):
        head = rows[lead][col]
        rows[lead] = [x / head for x in rows[lead]]
        rhs[lead] /= head
        for i in range(len(rows)):
            if i != lead and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[lead])]
                rhs[i] -= f * rhs[lead]
        basis[lead] = col

    def run(costs, enterable):
        while True:
            dual = [costs[basis[i]] for i in range(len(rows))]
            entering = None
            for col in range(enterable):
                reduced = costs[col] - sum(dual[i] * rows[i][col] for i in range(len(rows)))
                if reduced < 0:
                    entering = col
                    break
            if entering is None:
                return sum(dual[i] * rhs[i] for i in range(len(rows)))
            lead, best = None, None
            for i in range(len(rows)):
                if rows[i][entering] > 0:
                    ratio = rhs[i] / rows[i][entering]
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[lead]):
                        lead, best = i, ratio
            if lead is None:
                raise ArithmeticError("objective unbounded, the ball is not a polytope")
            pivot(entering, lead)

    art = len(rows)
    phase1 = [Fraction(0)] * n + [Fraction(1)] * art
    if run(phase1, n + art) > 0:
        return None
    # expel or drop any artificial still in the basis (its value is zero now)
    for i in range(len(rows) - 1, -1, -1):
        if basis[i] >= n:
            col = next((j for j in range(n) if rows[i][j]), None)
            if col is None:
                del rows[i], rhs[i], basis[i]
            else:
                pivot(col, i)
    phase2 = [Fraction(1)] * n + [Fraction(0)] * art
    return run(phase2, n)


def thurston_norm(polytope: NormPolytope, coefficients) -> Fraction:
    """Minkowski gauge of the polytope at the given class, an exact rational.

    This is the smallest lam >= 0 with the class inside lam times the
    convex hull of the vertices.  Raises if the class leaves the span of
    the vertex set, where the gauge is infinite.
    """
    target = tuple(Fraction(x) for x in coefficients)
    if len(target) != polytope.dimension:
        raise ValueError(
            f"expected {polytope.dimension} coefficients, got {len(target)}"
        )
    value = _minimize_total_weight(polytope.vertices, target)
    if value is None:
        raise ValueError("class lies outside the span of the norm ball vertices")
    return value


def l1_norm(coefficients) -> Fraction:
    """Coordinate-sum norm, the gauge of the cross-polytope of signed unit vectors."""
    return sum((abs(Fraction(x)) for x in coefficients), Fraction(0))


def linf_norm(coefficients) -> Fraction:
    """Maximum-coordinate norm, the gauge of the cube with all +-1 vertices."""
    return max(abs(Fraction(x)) for x in coefficients)


def m4_cube_coordinates(a, b, c, d) -> tuple:
    """Coordinates of a*x + b*y + c*z + d*w in the half-sum basis of M4.

    The half-sum basis is u1 = (x+y)/2, u2 = (y+z)/2, u3 = (z+w)/2,
    u4 = (x-w)/2; in it the unit norm ball of M4 is the standard 4-cube,
    so the norm of the class is the largest absolute coordinate.
    """
    return (a + b - c + d, -a + b + c - d, a - b + c + d, a - b + c - d)


def m3_norm(coefficients) -> Fraction:
    """Closed form for the M3 norm of alpha*x + beta*y + gamma*z.

    The unit ball is the parallelepiped cut out by the three functionals
    below, so the norm is the largest of their absolute values.
    """
    alpha, beta, gamma = (Fraction(x) for x in coefficients)
    return max(
        abs(alpha + beta - gamma),
        abs(alpha - beta + gamma),
        abs(-alpha + beta + gamma),
    )


def _signed_units(dim):
    out = []
    for i in range(dim):
        for sign in (1, -1):
            v = [0] * dim
            v[i] = sign
            out.append(tuple(v))
    return tuple(out)


def catalog_norm_ball(manifold: str) -> NormPolytope:
    """The unit Thurston norm ball of a catalog manifold, by its vertex list."""
    if manifold == "WPrime2":
        return NormPolytope(
            manifold,
            _signed_units(3),
            basis="x, y, z: classes of the six pants, one per parallel pair",
        )
    if manifold == "W2":
        return NormPolytope(
            manifold,
            _signed_units(3),
            basis="x: class shared by the two parallel pants; y, z: the other two pants",
        )
    if manifold == "M4":
        return NormPolytope(
            manifold,
            tuple(product((1, -1), repeat=4)),
            basis=(
                "half-sum coordinates u1=(x+y)/2, u2=(y+z)/2, u3=(z+w)/2, u4=(x-w)/2 "
                "of the four standard pants classes x, y, z, w"
            ),
        )
    if manifold == "M3":
        return NormPolytope(
            manifold,
            _signed_units(3) + ((1, 1, 1), (-1, -1, -1)),
            basis="x, y, z: classes of three of the four pants; the fourth is x+y+z",
        )
    if manifold == "ChainFilled":
        return NormPolytope(
            manifold,
            _signed_units(2),
            basis="x, y: classes of the two pants that avoid the filled cusp",
        )
    raise ValueError(f"no catalog norm ball for {manifold!r}")
