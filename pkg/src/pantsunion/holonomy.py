"""Parabolic holonomy for a two-pants neighborhood in a chain union.

The four generators are unipotent matrices depending on the two cusp moduli:

    x = [[1, 2], [0, 1]]          y = [[1, 0], [2, 1]]
    z = [[1, 2/tau], [0, 1]]      w = [[1, 0], [2*tau'], 1]]

Two trace constraints drive everything here: parabolicity of x*y^-1 forces
the lower-left normalization constant to be 2, and parabolicity of z*w^-1
forces the two moduli to agree.  For the doubled-tangency (B-type) gluing,
parabolicity of the commutator [y, z] pins the modulus to 2i.  Each solver
recomputes its constraint from matrix arithmetic instead of returning a
stored constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .moebius import INFINITY, MoebiusElement, as_point
from .scalars import ComplexScalar, QuadExt, exact_sqrt


def _as_scalar(value) -> ComplexScalar:
    point = as_point(value)
    if point is INFINITY:
        raise ValueError("modulus must be finite")
    return point


@dataclass(frozen=True)
class CuspModulus:
    """Cusp shape with respect to meridian and longitude; Im(tau) > 0."""

    tau: ComplexScalar

    def __post_init__(self):
        if not self.tau.im > 0:
            raise ValueError("modulus must have positive imaginary part")


def as_modulus(value) -> CuspModulus:
    if isinstance(value, CuspModulus):
        return value
    return CuspModulus(_as_scalar(value))


@dataclass(frozen=True)
class HolonomyQuad:
    """The four parabolic generators for a two-pants neighborhood."""

    x: MoebiusElement
    y: MoebiusElement
    z: MoebiusElement
    w: MoebiusElement


def build_generators(tau, tau_prime) -> HolonomyQuad:
    """Generators for the pair of cusp moduli; x and y are constant."""
    t = as_modulus(tau).tau
    tp = as_modulus(tau_prime).tau
    two = ComplexScalar.from_rational(2)
    return HolonomyQuad(
        x=MoebiusElement(1, 2, 0, 1),
        y=MoebiusElement(1, 0, 2, 1),
        z=MoebiusElement(1, two / t, 0, 1),
        w=MoebiusElement(1, 0, two * tp, 1),
    )


def _normalization_trace(c: Fraction) -> Fraction:
    x = MoebiusElement(1, 2, 0, 1)
    y = MoebiusElement(1, 0, c, 1)
    tr = (x * y.inverse()).trace()
    if tr.im:
        raise ArithmeticError("normalization trace should be real")
    return tr.re


def solve_meridian_normalization() -> Fraction:
    """The lower-left constant forced by parabolicity of x*y^-1.

    The trace is affine in the constant c; the affine form is recovered from
    two matrix evaluations, checked on a third, and then trace = +/-2 is
    solved exactly.  The unique nonzero solution is returned (c = 0 would
    collapse y to the identity).
    """
    t0 = _normalization_trace(Fraction(0))
    t1 = _normalization_trace(Fraction(1))
    slope = t1 - t0
    if t0 + 3 * slope != _normalization_trace(Fraction(3)):
        raise ArithmeticError("trace is not affine in the normalization constant")
    solutions = []
    for target in (Fraction(2), Fraction(-2)):
        if slope == 0:
            continue
        c = (target - t0) / slope
        if c != 0:
            solutions.append(c)
    if len(solutions) != 1:
        raise ArithmeticError("parabolicity does not pin a unique constant")
    return solutions[0]


def modulus_equality_residual(tau, tau_prime) -> ComplexScalar:
    """tr(z*w^-1) - 2; the trace is parabolic (+/-2) exactly when the two
    moduli are equal, so a residual of exactly -4 certifies equality."""
    quad = build_generators(tau, tau_prime)
    return (quad.z * quad.w.inverse()).trace() - ComplexScalar.from_rational(2)


def pair_commutator(tau) -> MoebiusElement:
    """The commutator y z y^-1 z^-1 at any nonzero tau.

    The algebraic identity needs no half-plane restriction, so real rational
    samples are accepted here even though they are not valid moduli.
    """
    t = _as_scalar(tau)
    if not t:
        raise ZeroDivisionError("tau must be nonzero")
    y = MoebiusElement(1, 0, 2, 1)
    z = MoebiusElement(1, ComplexScalar.from_rational(2) / t, 0, 1)
    return y * z * y.inverse() * z.inverse()


def b_type_modulus() -> CuspModulus:
    """Modulus forced by parabolicity of the pair commutator.

    The commutator trace is affine in u = tau^-2; the coefficients are
    recovered from matrix evaluations at two real sample points, verified on
    a third, and trace = +/-2 is solved exactly.  Only the root with
    positive imaginary part survives.
    """
    samples = []
    for t in (Fraction(1), Fraction(2)):
        tr = pair_commutator(ComplexScalar.from_rational(t)).trace()
        if tr.im:
            raise ArithmeticError("commutator trace should be real on real samples")
        samples.append((1 / (t * t), tr.re))
    (u0, t0), (u1, t1) = samples
    c2 = (t1 - t0) / (u1 - u0)
    c0 = t0 - c2 * u0
    check = pair_commutator(ComplexScalar.from_rational(3)).trace()
    if check.im or c0 + c2 * Fraction(1, 9) != check.re:
        raise ArithmeticError("commutator trace is not affine in tau^-2")
    candidates = []
    for target in (Fraction(2), Fraction(-2)):
        if c2 == 0:
            continue
        u = (target - c0) / c2
        if u == 0:
            continue  # tau^-2 = 0 has no finite solution
        if u < 0:
            # tau^2 = 1/u < 0, so tau is purely imaginary; take the upper root
            root = exact_sqrt(-1 / u)
            candidates.append(ComplexScalar.from_quad(QuadExt(0), root))
    if len(candidates) != 1:
        raise ArithmeticError("parabolicity does not pin a unique modulus")
    return CuspModulus(candidates[0])
