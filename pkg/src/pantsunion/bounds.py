"""Volume constants and the quantitative bounds used by the classification.

Catalog volumes are carried as exact multiples of the two ideal-polyhedron
constants whenever such a closed form exists; floats enter only when a
value is evaluated for display or comparison.  The counting bound, the
normalized-length estimates for Dehn fillings, and the Montesinos
exclusion lists live here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .scalars import octahedron_volume, tetrahedron_volume

__all__ = [
    "DEFAULT_TERMS",
    "MIN_FILLING_LENGTH",
    "VolumeConstant",
    "volume_constant",
    "SymbolicVolume",
    "TypeCensus",
    "MontesinosSlope",
    "max_disjoint_pants",
    "counting_bound_check",
    "catalog_volume",
    "catalog_pants_count",
    "catalog_counting_check",
    "normalized_length_lower_bound",
    "core_length_bound",
    "montesinos_hyperbolic",
    "convergence_report",
]

DEFAULT_TERMS = 10**6

# smallest admissible normalized filling length, 4*sqrt(2)*pi
MIN_FILLING_LENGTH = 4.0 * math.sqrt(2.0) * math.pi

_PRINTED_DIGITS = {"V_oct": "3.6638", "V_3": "1.0149"}


@dataclass(frozen=True)
class VolumeConstant:
    """A named volume constant with its published 4-digit decimal."""

    name: str
    value: float
    printed: str


@lru_cache(maxsize=None)
def volume_constant(name: str, terms: int = DEFAULT_TERMS) -> VolumeConstant:
    """Compute V_oct or V_3 from the Lobachevsky function and check its digits."""
    if name == "V_oct":
        value = octahedron_volume(terms)
    elif name == "V_3":
        value = tetrahedron_volume(terms)
    else:
        raise ValueError(f"unknown volume constant {name!r}")
    printed = _PRINTED_DIGITS[name]
    if abs(value - float(printed)) >= 1e-4:
        raise ArithmeticError(f"{name} evaluated too far from its printed digits")
    return VolumeConstant(name, value, printed)


def _v_oct(terms: int = DEFAULT_TERMS) -> float:
    return volume_constant("V_oct", terms).value


@dataclass(frozen=True)
class SymbolicVolume:
    """A volume kept in exact form: a rational combination of V_oct and V_3,
    or, for manifolds without a stated closed form, a printed decimal with
    an explicit tolerance."""

    oct_multiple: Fraction = Fraction(0)
    tet_multiple: Fraction = Fraction(0)
    literal: float | None = None
    tolerance: float = 0.0
    note: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "oct_multiple", Fraction(self.oct_multiple))
        object.__setattr__(self, "tet_multiple", Fraction(self.tet_multiple))
        exact = self.oct_multiple != 0 or self.tet_multiple != 0
        if exact == (self.literal is not None):
            raise ValueError("volume needs exactly one representation, multiple or literal")
        if self.literal is None and self.tolerance:
            raise ValueError("tolerance applies only to literal volumes")

    def is_exact(self) -> bool:
        return self.literal is None

    def value(self, terms: int = DEFAULT_TERMS) -> float:
        if self.literal is not None:
            return self.literal
        total = 0.0
        if self.oct_multiple:
            total += float(self.oct_multiple) * volume_constant("V_oct", terms).value
        if self.tet_multiple:
            total += float(self.tet_multiple) * volume_constant("V_3", terms).value
        return total

    def describe(self) -> str:
        if self.literal is not None:
            return f"{self.literal} (within {self.tolerance:g})"
        parts = []
        if self.oct_multiple:
            parts.append(f"{self.oct_multiple}*V_oct")
        if self.tet_multiple:
            parts.append(f"{self.tet_multiple}*V_3")
        return " + ".join(parts)


def _count_pairs(raw, what):
    if raw is None:
        return ()
    items = raw.items() if isinstance(raw, dict) else raw
    cleaned = {}
    for n, count in items:
        n, count = int(n), int(count)
        if n < 1:
            raise ValueError(f"{what} index must be at least 1, got {n}")
        if count < 0:
            raise ValueError(f"{what} count must be nonnegative, got {count}")
        if count:
            cleaned[n] = cleaned.get(n, 0) + count
    return tuple(sorted(cleaned.items()))


@dataclass(frozen=True)
class TypeCensus:
    """Component counts for a union of pants: chains[n] components of the
    n-pants chain type, cycles[n] components of the 2n-pants cycle type,
    and the two triangle-pattern counts."""

    chains: tuple = ()
    cycles: tuple = ()
    t3: int = 0
    t4: int = 0

    def __post_init__(self):
        object.__setattr__(self, "chains", _count_pairs(self.chains, "chain"))
        object.__setattr__(self, "cycles", _count_pairs(self.cycles, "cycle"))
        for name in ("t3", "t4"):
            count = int(getattr(self, name))
            if count < 0:
                raise ValueError(f"{name} must be nonnegative")
            object.__setattr__(self, name, count)
        if not (self.chains or self.cycles or self.t3 or self.t4):
            raise ValueError("census must contain at least one component")

    def total_pants(self) -> int:
        """Number of pants across all components."""
        return (
            sum(n * c for n, c in self.chains)
            + sum(2 * n * c for n, c in self.cycles)
            + 3 * self.t3
            + 4 * self.t4
        )

    def disjoint_lower_bound(self) -> int:
        """Disjoint pants extractable from the components: floor((n+1)/2) per
        n-chain, n per 2n-cycle, 1 and 3 for the triangle patterns."""
        return (
            sum(((n + 1) // 2) * c for n, c in self.chains)
            + sum(n * c for n, c in self.cycles)
            + self.t3
            + 3 * self.t4
        )


def _volume_value(vol, terms):
    if isinstance(vol, SymbolicVolume):
        return vol.value(terms)
    return float(vol)


def max_disjoint_pants(vol, terms: int = DEFAULT_TERMS) -> int:
    """Largest number of disjoint pants a manifold of this volume can hold,
    floor(vol / V_oct).  Exact volumes that are pure V_oct multiples are
    floored without touching floats."""
    if isinstance(vol, SymbolicVolume) and vol.is_exact() and vol.tet_multiple == 0:
        multiple = vol.oct_multiple
        if multiple <= 0:
            raise ValueError("volume must be positive")
        return multiple.numerator // multiple.denominator
    value = _volume_value(vol, terms)
    if value <= 0:
        raise ValueError("volume must be positive")
    return math.floor(value / _v_oct(terms))


def counting_bound_check(census: TypeCensus, vol, terms: int = DEFAULT_TERMS) -> dict:
    """Check the pants-count bound k <= 4*vol/V_oct for a general census.

    k is the total number of pants and disjoint_lb the number of disjoint
    ones the census guarantees, so vol must be at least disjoint_lb*V_oct;
    volumes below that floor are rejected rather than silently accepted.
    The termwise coefficient inequality 4*disjoint_lb > k is re-verified on
    the way.
    """
    k = census.total_pants()
    lb = census.disjoint_lower_bound()
    if 4 * lb <= k:
        raise ArithmeticError("termwise coefficient comparison failed for this census")
    v_oct = _v_oct(terms)
    value = _volume_value(vol, terms)
    if value < lb * v_oct * (1.0 - 1e-12):
        raise ValueError(
            f"volume {value:.6f} is below the disjointness floor {lb}*V_oct"
        )
    bound = 4.0 * value / v_oct
    return {"k": k, "disjoint_lb": lb, "bound": bound, "ok": k <= bound}


def _family_index(manifold, n):
    if n is None:
        raise ValueError(f"the {manifold} family needs an index n")
    n = int(n)
    return n


def catalog_volume(manifold: str, n: int | None = None) -> SymbolicVolume:
    """Exact volume of a catalog manifold, by id.

    The chain-link families take an index: W with n >= 1, WPrime with even
    n >= 2.  Shorthand ids like W2, W3, WPrime2 are accepted.  M3 carries
    only printed digits, stored with a 1e-4 tolerance.
    """
    if manifold.startswith("W") and manifold not in ("W", "WPrime"):
        family = "WPrime" if manifold.startswith("WPrime") else "W"
        suffix = manifold[len(family):]
        if not suffix.isdigit():
            raise ValueError(f"unknown catalog manifold {manifold!r}")
        if n is not None:
            raise ValueError("index is already part of the id")
        manifold, n = family, int(suffix)
    if manifold == "W":
        n = _family_index("W", n)
        if n < 1:
            raise ValueError("the W family starts at n = 1")
        return SymbolicVolume(oct_multiple=n, note=f"holds the 2n-pants cycle, n = {n}")
    if manifold == "WPrime":
        n = _family_index("WPrime", n)
        if n < 2 or n % 2 != 0:
            raise ValueError("the WPrime family takes even n >= 2")
        if n == 2:
            return SymbolicVolume(oct_multiple=2, note="holds the six-pants triple cycle")
        return SymbolicVolume(oct_multiple=n, note=f"holds the 2n-pants cycle, n = {n}")
    if n is not None:
        raise ValueError(f"{manifold} takes no family index")
    if manifold == "M3":
        return SymbolicVolume(
            literal=5.3334,
            tolerance=1e-4,
            note="printed digits only, no closed form stored",
        )
    if manifold == "M4":
        return SymbolicVolume(oct_multiple=2, note="holds the eight-pants tetrahedral family")
    if manifold == "M5":
        return SymbolicVolume(tet_multiple=10, note="holds the ten-pants pentangle family")
    if manifold == "M6":
        return SymbolicVolume(oct_multiple=4, note="holds the eight-pants octahedral family")
    raise ValueError(f"unknown catalog manifold {manifold!r}")


def catalog_pants_count(manifold: str, n: int | None = None) -> int:
    """Number of pants in the catalog manifold's full union."""
    if manifold.startswith("W") and manifold not in ("W", "WPrime"):
        family = "WPrime" if manifold.startswith("WPrime") else "W"
        suffix = manifold[len(family):]
        if not suffix.isdigit() or n is not None:
            raise ValueError(f"unknown catalog manifold {manifold!r}")
        manifold, n = family, int(suffix)
    if manifold == "W":
        n = _family_index("W", n)
        if n < 1:
            raise ValueError("the W family starts at n = 1")
        return 2 * n
    if manifold == "WPrime":
        n = _family_index("WPrime", n)
        if n < 2 or n % 2 != 0:
            raise ValueError("the WPrime family takes even n >= 2")
        return 6 if n == 2 else 2 * n
    if n is not None:
        raise ValueError(f"{manifold} takes no family index")
    counts = {"M3": 4, "M4": 8, "M5": 10, "M6": 8}
    if manifold not in counts:
        raise ValueError(f"unknown catalog manifold {manifold!r}")
    return counts[manifold]


def catalog_counting_check(manifold: str, n: int | None = None, terms: int = DEFAULT_TERMS) -> dict:
    """Evaluate the counting bound on a catalog manifold's own census.

    Equality k = 4*vol/V_oct is decided exactly when the volume is a pure
    V_oct multiple; mixed or printed volumes are compared with a wide
    safety margin, which every catalog entry clears."""
    k = catalog_pants_count(manifold, n)
    vol = catalog_volume(manifold, n)
    if vol.is_exact() and vol.tet_multiple == 0:
        four_vol = 4 * vol.oct_multiple
        equality = k == four_vol
        ok = k <= four_vol
        bound = float(four_vol)
    else:
        bound = 4.0 * vol.value(terms) / _v_oct(terms)
        slack = abs(bound - k)
        if slack < 0.5:
            raise ArithmeticError(
                "inexact volume too close to the bound to decide equality"
            )
        equality = False
        ok = k < bound
    return {"k": k, "volume": vol, "bound": bound, "ok": ok, "equality": equality}


def normalized_length_lower_bound(n: int, r=0) -> dict:
    """Length bounds on the filling slope of a chain of n pants.

    The cusp's fundamental domain is a stack of unit squares of total
    height n + 1 + r, with the meridian along the base.  After scaling the
    cusp to unit area the meridian has length 2/sqrt(n+1+r), and any other
    slope has length at least sqrt(n+1+r)/2; the two are exact reciprocals.
    """
    n = int(n)
    if n < 1:
        raise ValueError("chain length must be at least 1")
    r = Fraction(r)
    if r < 0:
        raise ValueError("extra cusp height must be nonnegative")
    area = n + 1 + r
    root = math.sqrt(area)
    return {
        "length_bound": root / 2.0,
        "meridian_length": 2.0 / root,
        # exact square of the bound, so callers can check identities without
        # trusting the floating-point square root
        "length_bound_sq": area / 4,
    }


def core_length_bound(length: float) -> float:
    """Upper bound 2*pi/(L^2 - 16*pi^2) on the filled core geodesic length.

    Valid only for normalized slope length L at least 4*sqrt(2)*pi, the
    smallest admissible threshold constant."""
    length = float(length)
    if length < MIN_FILLING_LENGTH * (1.0 - 1e-13):
        raise ValueError(
            f"normalized length {length:.6f} is below the threshold {MIN_FILLING_LENGTH:.6f}"
        )
    return 2.0 * math.pi / (length * length - 16.0 * math.pi**2)


_INFINITE_TOKENS = (None, math.inf, "inf", "infinity", "oo")


@dataclass(frozen=True)
class MontesinosSlope:
    """A tangle-replacement slope for the n-chain surgery description.

    r is a rational number, or None for the infinite slope."""

    n: int
    r: Fraction | None = None

    def __post_init__(self):
        n = int(self.n)
        if n < 2:
            raise ValueError("the surgery description needs n >= 2")
        object.__setattr__(self, "n", n)
        r = self.r
        if isinstance(r, str):
            r = r.strip().lower()
        if r in _INFINITE_TOKENS:
            object.__setattr__(self, "r", None)
        else:
            object.__setattr__(self, "r", Fraction(r))

    @property
    def is_infinite(self) -> bool:
        return self.r is None


def montesinos_hyperbolic(slope: MontesinosSlope) -> bool:
    """Whether the slope's filling stays hyperbolic.

    False exactly on the finite exclusion lists: for n = 2 the slopes
    -2, -3/2, -1 and infinity; for n = 3 the slopes -2 and infinity;
    for n >= 4 only infinity."""
    if slope.is_infinite:
        return False
    if slope.n == 2:
        return slope.r not in (Fraction(-2), Fraction(-3, 2), Fraction(-1))
    if slope.n == 3:
        return slope.r != Fraction(-2)
    return True


def convergence_report(n: int) -> dict:
    """Quantitative skeleton of the long-chain modulus convergence.

    For a chain of n pants the filling slope has normalized length at
    least L_min = sqrt(n+1)/2.  Once L_min clears the admissible
    threshold (first at n = 1263) the filled core geodesic is shorter
    than 2*pi/(L_min^2 - 16*pi^2), which tends to zero as n grows;
    below the threshold the core bound is reported as None.
    """
    n = int(n)
    if n < 2:
        raise ValueError("the chain convergence report needs n >= 2")
    l_min = math.sqrt(n + 1) / 2.0
    if l_min >= MIN_FILLING_LENGTH:
        return {"L_min": l_min, "core_bound": core_length_bound(l_min)}
    return {"L_min": l_min, "core_bound": None}
