"""Exact scalar arithmetic shared by every other module.

Provides arbitrary-precision rationals (stdlib ``Fraction``), real quadratic
extensions Q(sqrt(d)) with an exact total order, complex numbers whose two
parts share a single backend (rational, quadratic, or machine float), and a
truncated-series evaluator for the Lobachevsky function that produces the
hyperbolic volume constants.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Tuple, Union

import numpy as np

Rational = Fraction

RationalLike = Union[int, Fraction]


def squarefree_decompose(n: int) -> Tuple[int, int]:
    """Write n > 0 as s*s*d with d squarefree; return (s, d)."""
    if n <= 0:
        raise ValueError("positive integer required")
    s, d = 1, 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return s, d * m


@total_ordering
class QuadExt:
    """Element a + b*sqrt(d) of a real quadratic field Q(sqrt(d)).

    d is a positive squarefree integer.  Values are normalized so that a
    plain rational always carries d == 1; arithmetic freely mixes rationals
    with one genuine extension but rejects two different extensions.
    Instances are treated as immutable.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: int = 1) -> None:
        a, b = Fraction(a), Fraction(b)
        if d <= 0:
            raise ValueError("d must be a positive integer")
        s, sf = squarefree_decompose(d)
        if s != 1:
            b, d = b * s, sf
        if b == 0:
            d = 1
        elif d == 1:
            a, b = a + b, Fraction(0)
        self.a, self.b, self.d = a, b, d

    # -- coercion helpers -------------------------------------------------

    @staticmethod
    def _coerce(value: "QuadExt | RationalLike") -> "QuadExt":
        if isinstance(value, QuadExt):
            return value
        if isinstance(value, (int, Fraction)):
            return QuadExt(value)
        return NotImplemented  # type: ignore[return-value]

    @staticmethod
    def _join_d(x: "QuadExt", y: "QuadExt") -> int:
        if x.b == 0:
            return y.d
        if y.b == 0:
            return x.d
        if x.d != y.d:
            raise ValueError(f"incompatible extensions sqrt({x.d}) and sqrt({y.d})")
        return x.d

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join_d(self, other)
        return QuadExt(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join_d(self, other)
        return QuadExt(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.a == 0 and other.b == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        d = self._join_d(self, other)
        n = other.norm()
        return self * QuadExt(other.a / n, -other.b / n, d)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "QuadExt":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = QuadExt(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "QuadExt":
        """Galois conjugate a - b*sqrt(d)."""
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - b^2 d (always rational)."""
        return self.a * self.a - self.b * self.b * self.d

    # -- order structure ---------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(d)."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite-sign terms: sign follows whichever square dominates
        gap = a * a - b * b * self.d
        if gap == 0:
            return 0
        return (1 if a > 0 else -1) if gap > 0 else (1 if b > 0 else -1)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.a, self.b, self.d) == (other.a, other.b, other.d)

    def __lt__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # -- conversions ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadExt({self.a})"
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"


def exact_sqrt(value: RationalLike) -> QuadExt:
    """Exact square root of a nonnegative rational, as an element of Q(sqrt(d)).

    sqrt(p/q) = (s/q) * sqrt(d) where p*q = s^2 d with d squarefree.
    """
    value = Fraction(value)
    if value < 0:
        raise ValueError("negative radicand")
    if value == 0:
        return QuadExt(0)
    s, d = squarefree_decompose(value.numerator * value.denominator)
    coeff = Fraction(s, value.denominator)
    if d == 1:
        return QuadExt(coeff)
    return QuadExt(0, coeff, d)


def quad_arith(x: QuadExt, y: QuadExt, op: str) -> QuadExt:
    """Field-arithmetic dispatcher on Q(sqrt(d)); op is add, mul, or div."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}; expected add, mul, or div")


class ComplexScalar:
    """Complex number whose real and imaginary parts share one backend.

    Backends: ``rational`` (both parts Fraction), ``quad`` (both parts
    QuadExt over one extension), ``float`` (both parts machine floats).
    Rationals promote into a quadratic extension automatically; mixing the
    float backend with an exact one, or two different extensions, raises.
    Exact backends compare exactly; float comparisons should go through
    close_to() with an explicit tolerance.
    """

    __slots__ = ("re", "im", "backend")

    def __init__(self, re, im, backend: str) -> None:
        self.re = re
        self.im = im
        self.backend = backend

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_rational(cls, re: RationalLike, im: RationalLike = 0) -> "ComplexScalar":
        return cls(Fraction(re), Fraction(im), "rational")

    @classmethod
    def from_quad(cls, re, im) -> "ComplexScalar":
        re = re if isinstance(re, QuadExt) else QuadExt(re)
        im = im if isinstance(im, QuadExt) else QuadExt(im)
        QuadExt._join_d(re, im)
        if re.is_rational and im.is_rational:
            return cls.from_rational(re.a, im.a)
        return cls(re, im, "quad")

    @classmethod
    def from_float(cls, re: float, im: float = 0.0) -> "ComplexScalar":
        return cls(float(re), float(im), "float")

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexScalar":
        return cls.from_float(z.real, z.imag)

    # -- backend plumbing ------------------------------------------------------

    @property
    def d(self) -> int:
        """Squarefree d of the quadratic backend (1 when purely rational)."""
        if self.backend == "quad":
            return QuadExt._join_d(self.re, self.im)
        if self.backend == "rational":
            return 1
        raise ValueError("float backend has no extension field")

    def is_exact(self) -> bool:
        return self.backend != "float"

    @staticmethod
    def _common_backend(x: "ComplexScalar", y: "ComplexScalar") -> str:
        if x.backend == "float" or y.backend == "float":
            if x.backend != y.backend:
                raise ValueError("cannot mix float and exact backends")
            return "float"
        if x.backend == "rational" and y.backend == "rational":
            return "rational"
        return "quad"

    def _parts(self, backend: str):
        if backend == self.backend:
            return self.re, self.im
        if backend == "quad" and self.backend == "rational":
            return QuadExt(self.re), QuadExt(self.im)
        raise ValueError(f"cannot view {self.backend} backend as {backend}")

    @classmethod
    def _wrap(cls, re, im, backend: str) -> "ComplexScalar":
        if backend == "quad":
            return cls.from_quad(re, im)
        return cls(re, im, backend)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ComplexScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ComplexScalar.from_rational(other)
        if isinstance(other, QuadExt):
            return ComplexScalar.from_quad(other, QuadExt(0))
        if isinstance(other, float):
            return ComplexScalar.from_float(other)
        if isinstance(other, complex):
            return ComplexScalar.from_complex(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        backend = self._common_backend(self, other)
        a, b = self._parts(backend)
        c, d = other._parts(backend)
        return self._wrap(a + c, b + d, backend)

    __radd__ = __add__

    def __neg__(self) -> "ComplexScalar":
        return self._wrap(-self.re, -self.im, self.backend)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        backend = self._common_backend(self, other)
        a, b = self._parts(backend)
        c, d = other._parts(backend)
        return self._wrap(a * c - b * d, a * d + b * c, backend)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        backend = self._common_backend(self, other)
        a, b = self._parts(backend)
        c, d = other._parts(backend)
        n = c * c + d * d
        if backend != "float" and n == 0:
            raise ZeroDivisionError("complex division by zero")
        return self._wrap((a * c + b * d) / n, (b * c - a * d) / n, backend)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conj(self) -> "ComplexScalar":
        return self._wrap(self.re, -self.im, self.backend)

    def abs2(self):
        """Squared modulus re^2 + im^2 in the backend's scalar type."""
        return self.re * self.re + self.im * self.im

    # -- comparisons -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        try:
            backend = self._common_backend(self, other)
        except ValueError:
            return False
        a, b = self._parts(backend)
        c, d = other._parts(backend)
        return a == c and b == d

    def __hash__(self) -> int:
        return hash((self.backend, self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def close_to(self, other, tol: float = 1e-9) -> bool:
        """Tolerance comparison; the only sanctioned equality across backends."""
        other = self._coerce(other)
        return abs(self.to_complex() - other.to_complex()) <= tol

    # -- conversions --------------------------------------------------------

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"ComplexScalar({self.re!r}, {self.im!r}, {self.backend})"

    def __str__(self) -> str:
        return f"({self.re}) + ({self.im})i"


def lobachevsky(theta: float, terms: int = 10**6) -> float:
    """Truncated Lobachevsky series (1/2) * sum_{k<=terms} sin(2 k theta)/k^2.

    The tail is bounded by (1/2) * sum_{k>terms} 1/k^2 <= 1/(2*terms), so the
    default gives the function to better than 5e-7.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    theta = float(theta)
    total = 0.0
    chunk = 1 << 18
    for start in range(1, terms + 1, chunk):
        k = np.arange(start, min(start + chunk, terms + 1), dtype=np.float64)
        total += float(np.sum(np.sin((2.0 * theta) * k) / (k * k)))
    return 0.5 * total


def octahedron_volume(terms: int = 10**6) -> float:
    """Volume of the regular ideal octahedron, 8 * Lob(pi/4)."""
    return 8.0 * lobachevsky(math.pi / 4.0, terms)


def tetrahedron_volume(terms: int = 10**6) -> float:
    """Volume of the regular ideal tetrahedron, 3 * Lob(pi/3)."""
    return 3.0 * lobachevsky(math.pi / 3.0, terms)
