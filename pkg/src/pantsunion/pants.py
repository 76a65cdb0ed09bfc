"""Combinatorial unions of totally geodesic three-punctured spheres.

A union is modeled by its intersection pattern: each three-punctured
sphere ("pants") carries three boundary loops on torus cusps, each loop
labeled by an exact slope, and each intersection geodesic of a pants
pair is labeled by whether it separates each side.  Boundary slopes tie
the two layers together: every intersection geodesic runs into cusps at
both ends, so the loop crossing numbers determine how many geodesics a
pair can share.

`validate_local` checks the local rules a pattern must satisfy inside an
orientable hyperbolic manifold, `classify` names the finitely many
patterns a complete union can form, and `canonical_config` builds a
reference configuration for each named type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Optional, Union

SCHEMA_VERSION = 1

_PARAMETRIC_KINDS = ("A", "B", "Whi", "WhiPrime", "WhiHat", "WhiPrimeHat")
_FIXED_COUNTS = {
    "T3": 3,
    "T4": 4,
    "Bor6": 6,
    "Mag4": 4,
    "Tet8": 8,
    "Pen10": 10,
    "Oct8": 8,
    "TetHat2": 2,
    "PenHat4": 4,
    "OctHat4": 4,
}
_INFINITE_KINDS = ("BInf", "WhiInf")


@dataclass(frozen=True, order=True)
class Slope:
    """Isotopy class of an essential loop on a torus cusp.

    Stored as a primitive integer pair (p, q) meaning p*meridian +
    q*longitude, normalized up to overall sign.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise ValueError("slope entries must be integers")
        if self.p == 0 and self.q == 0:
            raise ValueError("slope (0, 0) does not name a loop")
        g = gcd(self.p, self.q)
        p, q = self.p // g, self.q // g
        if p < 0 or (p == 0 and q < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def shorthand(self) -> object:
        if (self.p, self.q) == (0, 1):
            return 0
        if (self.p, self.q) == (1, 1):
            return 1
        if (self.p, self.q) == (1, 0):
            return "inf"
        return [self.p, self.q]


def parse_slope(raw: object) -> Slope:
    """Read a slope from its shorthand: 0, 1, "inf", or a pair [p, q]."""
    if raw == 0:
        return Slope(0, 1)
    if raw == 1:
        return Slope(1, 1)
    if raw in ("inf", "infinity"):
        return Slope(1, 0)
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        return Slope(raw[0], raw[1])
    raise ValueError(f"unrecognized slope {raw!r}")


def crossing_number(s: Slope, t: Slope) -> int:
    """Minimal number of intersection points of loops with these slopes."""
    return abs(s.p * t.q - s.q * t.p)


@dataclass(frozen=True, order=True)
class Loop:
    cusp: str
    slope: Slope


@dataclass(frozen=True, order=True)
class Geodesic:
    """One intersection geodesic of a pants pair.

    `sides[i]` records whether the geodesic is non-separating ("N") or
    separating ("S") in `pair[i]`.
    """

    pair: tuple
    sides: tuple

    @staticmethod
    def of(a: str, b: str, side_a: str, side_b: str) -> "Geodesic":
        if a == b:
            raise ValueError("a geodesic record needs two distinct pants")
        for side in (side_a, side_b):
            if side not in ("N", "S"):
                raise ValueError(f"side label must be 'N' or 'S', got {side!r}")
        if b < a:
            a, b, side_a, side_b = b, a, side_b, side_a
        return Geodesic(pair=(a, b), sides=(side_a, side_b))


@dataclass(frozen=True)
class PantsConfig:
    """Immutable intersection pattern of a union of pants.

    `pants` maps each identifier to its three boundary loops.  `framing`
    is an optional bit distinguishing the two neighborhood flavors of a
    cyclic family (0 plain, 1 primed); it is data beyond the intersection
    pattern and may be absent.  Infinite unions set `finite=False` and
    record how many directions they extend in via `ends`; any pants
    listed then form a finite window of the pattern.
    """

    pants: tuple  # ((pants_id, (Loop, Loop, Loop)), ...) sorted by id
    geodesics: tuple  # (Geodesic, ...) sorted
    framing: Optional[int] = None
    finite: bool = True
    ends: Optional[int] = None

    def __post_init__(self) -> None:
        ids = [pid for pid, _ in self.pants]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate pants identifier")
        for pid, loops in self.pants:
            if len(loops) != 3:
                raise ValueError(f"pants {pid!r} must have exactly 3 boundary loops")
        known = set(ids)
        for g in self.geodesics:
            for pid in g.pair:
                if pid not in known:
                    raise ValueError(f"geodesic references unknown pants {pid!r}")
        if self.framing not in (None, 0, 1):
            raise ValueError("framing must be 0, 1, or absent")
        if self.finite:
            if self.ends is not None:
                raise ValueError("ends applies only to infinite configurations")
        else:
            if self.ends not in (1, 2):
                raise ValueError("an infinite configuration needs ends = 1 or 2")

    @staticmethod
    def build(pants, geodesics, framing=None, finite=True, ends=None) -> "PantsConfig":
        rows = []
        for pid, loops in sorted(pants.items()):
            rows.append((pid, tuple(sorted(loops))))
        return PantsConfig(
            pants=tuple(rows),
            geodesics=tuple(sorted(geodesics)),
            framing=framing,
            finite=finite,
            ends=ends,
        )

    @staticmethod
    def from_dict(data: dict) -> "PantsConfig":
        if not isinstance(data, dict):
            raise ValueError("configuration must be a JSON object")
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"expected schema {SCHEMA_VERSION}")
        raw_pants = data.get("pants")
        if not isinstance(raw_pants, dict) or not raw_pants:
            raise ValueError("'pants' must be a non-empty object")
        pants = {}
        for pid, raw_loops in raw_pants.items():
            if not isinstance(raw_loops, list) or len(raw_loops) != 3:
                raise ValueError(f"pants {pid!r} must have exactly 3 boundary loops")
            loops = []
            for raw in raw_loops:
                if not isinstance(raw, dict) or "cusp" not in raw or "slope" not in raw:
                    raise ValueError("each loop needs 'cusp' and 'slope'")
                loops.append(Loop(cusp=str(raw["cusp"]), slope=parse_slope(raw["slope"])))
            pants[str(pid)] = loops
        raw_geodesics = data.get("geodesics", [])
        if not isinstance(raw_geodesics, list):
            raise ValueError("'geodesics' must be a list")
        geodesics = []
        for raw in raw_geodesics:
            names = raw.get("pants")
            sides = raw.get("sides")
            if (
                not isinstance(names, list)
                or len(names) != 2
                or not isinstance(sides, list)
                or len(sides) != 2
            ):
                raise ValueError("each geodesic needs two pants and two side labels")
            geodesics.append(Geodesic.of(str(names[0]), str(names[1]), sides[0], sides[1]))
        finite = data.get("finite", True)
        if not isinstance(finite, bool):
            raise ValueError("'finite' must be a boolean")
        return PantsConfig.build(
            pants,
            geodesics,
            framing=data.get("framing"),
            finite=finite,
            ends=data.get("ends"),
        )

    def to_dict(self) -> dict:
        data = {
            "schema": SCHEMA_VERSION,
            "pants": {
                pid: [{"cusp": lp.cusp, "slope": lp.slope.shorthand()} for lp in loops]
                for pid, loops in self.pants
            },
            "geodesics": [
                {"pants": list(g.pair), "sides": list(g.sides)} for g in self.geodesics
            ],
        }
        if self.framing is not None:
            data["framing"] = self.framing
        if not self.finite:
            data["finite"] = False
            data["ends"] = self.ends
        return data

    def ids(self) -> tuple:
        return tuple(pid for pid, _ in self.pants)

    def loops_of(self, pid: str) -> tuple:
        for name, loops in self.pants:
            if name == pid:
                return loops
        raise KeyError(pid)

    def cusps(self) -> tuple:
        seen = sorted({lp.cusp for _, loops in self.pants for lp in loops})
        return tuple(seen)

    def pair_geodesics(self) -> dict:
        pairs = {}
        for g in self.geodesics:
            pairs.setdefault(g.pair, []).append(g.sides)
        return {pair: sorted(sides) for pair, sides in pairs.items()}

    def pair_crossings(self, a: str, b: str) -> dict:
        """Crossing counts of the two boundaries, per cusp."""
        counts = {}
        for la in self.loops_of(a):
            for lb in self.loops_of(b):
                if la.cusp != lb.cusp:
                    continue
                n = crossing_number(la.slope, lb.slope)
                if n:
                    counts[la.cusp] = counts.get(la.cusp, 0) + n
        return counts


@dataclass(frozen=True, order=True)
class UnionType:
    """Name of a union pattern, with the pants count for parametric kinds."""

    kind: str
    count: Optional[int] = None

    def __post_init__(self) -> None:
        kind, count = self.kind, self.count
        if kind in _INFINITE_KINDS:
            if count is not None:
                raise ValueError(f"{kind} takes no pants count")
            return
        if kind in _FIXED_COUNTS:
            if count is None:
                object.__setattr__(self, "count", _FIXED_COUNTS[kind])
            elif count != _FIXED_COUNTS[kind]:
                raise ValueError(f"{kind} always has {_FIXED_COUNTS[kind]} pants")
            return
        if kind not in _PARAMETRIC_KINDS:
            raise ValueError(f"unknown union kind {kind!r}")
        if not isinstance(count, int):
            raise ValueError(f"{kind} needs an integer pants count")
        ok = {
            "A": count >= 1,
            "B": count >= 2 and count % 2 == 0,
            "Whi": count >= 4 and count % 2 == 0,
            "WhiPrime": count >= 8 and count % 4 == 0,
            "WhiHat": count >= 2,
            "WhiPrimeHat": count >= 2 and count % 2 == 0,
        }[kind]
        if not ok:
            raise ValueError(f"{kind} does not occur with {count} pants")

    def name(self) -> str:
        if self.kind in _PARAMETRIC_KINDS:
            return f"{self.kind}({self.count})"
        return self.kind

    @staticmethod
    def parse(text: str) -> "UnionType":
        text = text.strip()
        if "(" in text:
            kind, _, rest = text.partition("(")
            rest = rest.rstrip(")")
            return UnionType(kind.strip(), int(rest))
        return UnionType(text)


@dataclass(frozen=True)
class Impossible:
    """The pattern cannot be a complete union in a hyperbolic manifold."""

    reason: str


@dataclass(frozen=True)
class Ambiguous:
    """The pattern needs the framing bit to finish the classification."""

    candidates: tuple
    note: str = ""


ClassifyResult = Union[UnionType, Impossible, Ambiguous]


# -- local validation -------------------------------------------------------

RULE_SS = "rule: no intersection geodesic separates both of the pants it lies in"
RULE_MIXED = (
    "rule: a pants pair cannot meet in a separating-type and a"
    " non-separating-type geodesic together"
)
RULE_TWO_SN = "rule: a pants pair cannot meet in two separating-type geodesics"
RULE_THREE = (
    "rule: a pants pair meeting in three or more geodesics forces a"
    " non-orientable ambient manifold"
)
RULE_ENDPOINTS = (
    "rule: boundary crossings must number twice the geodesics of the pair,"
    " one crossing per geodesic endpoint"
)
RULE_SN_LAYOUT = (
    "rule: a separating-side geodesic runs twice into one cusp, with one"
    " boundary loop on the separating side and two on the other"
)
RULE_NN_RETURN = (
    "rule: a geodesic returning twice to a single boundary loop separates"
    " that pants, so its side label there must be S"
)
RULE_OWN_LOOPS = (
    "rule: boundary loops of one pants are disjoint, so two in a common"
    " cusp must be parallel"
)
RULE_CAP_PAIR = (
    "rule: without separating-type or doubled intersections, two boundary"
    " loops in a cusp cross at most once"
)
RULE_CAP_LOOP = (
    "rule: without separating-type or doubled intersections, each boundary"
    " loop crosses the others at most twice"
)


def _pen10_cusp_signature(entries) -> bool:
    # six loops from six distinct pants, three parallel classes of two
    if len(entries) != 6:
        return False
    if len({pid for pid, _ in entries}) != 6:
        return False
    classes = {}
    for _, slope in entries:
        classes[slope] = classes.get(slope, 0) + 1
    return sorted(classes.values()) == [2, 2, 2]


def validate_local(config: PantsConfig) -> list:
    """Check the local intersection rules; return violations (empty if ok)."""
    violations = []
    pairs = config.pair_geodesics()

    by_cusp = {}
    for pid, loops in config.pants:
        for lp in loops:
            by_cusp.setdefault(lp.cusp, []).append((pid, lp.slope))

    for cusp, entries in sorted(by_cusp.items()):
        per_pants = {}
        for pid, slope in entries:
            per_pants.setdefault(pid, []).append(slope)
        for pid, slopes in sorted(per_pants.items()):
            if len(slopes) > 1 and len(set(slopes)) > 1:
                violations.append(
                    f"{RULE_OWN_LOOPS} (pants {pid!r} in cusp {cusp!r})"
                )

    for pair, sides_list in sorted(pairs.items()):
        label = f"pants pair {pair!r}"
        if len(sides_list) >= 3:
            violations.append(f"{RULE_THREE} ({label})")
        elif len(sides_list) == 2:
            flat = sorted("".join(sorted(s)) for s in sides_list)
            if flat != ["NN", "NN"]:
                if "NS" in flat and "NN" in flat:
                    violations.append(f"{RULE_MIXED} ({label})")
                elif flat == ["NS", "NS"]:
                    violations.append(f"{RULE_TWO_SN} ({label})")
        for sides in sides_list:
            if sides == ("S", "S"):
                violations.append(f"{RULE_SS} ({label})")

    all_ids = config.ids()
    for a, b in itertools.combinations(all_ids, 2):
        pair = (a, b) if a < b else (b, a)
        sides_list = pairs.get(pair, [])
        crossings = config.pair_crossings(*pair)
        total = sum(crossings.values())
        if total != 2 * len(sides_list):
            violations.append(
                f"{RULE_ENDPOINTS} ({pair!r}: {total} crossings,"
                f" {len(sides_list)} geodesics)"
            )
            continue
        if len(sides_list) == 1:
            sides = sides_list[0]
            if "S" in sides and "N" in sides:
                ok = False
                if len(crossings) == 1:
                    cusp = next(iter(crossings))
                    s_side = pair[sides.index("S")]
                    n_side = pair[sides.index("N")]
                    s_loops = [l for l in config.loops_of(s_side) if l.cusp == cusp]
                    n_loops = [l for l in config.loops_of(n_side) if l.cusp == cusp]
                    ok = len(s_loops) == 1 and len(n_loops) == 2
                if not ok:
                    violations.append(f"{RULE_SN_LAYOUT} ({pair!r})")
            elif sides == ("N", "N") and len(crossings) == 1:
                cusp = next(iter(crossings))
                for pid in pair:
                    here = [l for l in config.loops_of(pid) if l.cusp == cusp]
                    if len(here) == 1:
                        violations.append(f"{RULE_NN_RETURN} ({pair!r} in {cusp!r})")
                        break

    has_special = False
    for sides_list in pairs.values():
        if len(sides_list) >= 2:
            has_special = True
        for sides in sides_list:
            if "S" in sides:
                has_special = True
    if not has_special:
        for cusp, entries in sorted(by_cusp.items()):
            if _pen10_cusp_signature(entries):
                continue
            for (p1, s1), (p2, s2) in itertools.combinations(entries, 2):
                if p1 != p2 and crossing_number(s1, s2) > 1:
                    violations.append(f"{RULE_CAP_PAIR} (cusp {cusp!r})")
            for i, (p1, s1) in enumerate(entries):
                load = sum(
                    crossing_number(s1, s2)
                    for j, (p2, s2) in enumerate(entries)
                    if j != i and p2 != p1
                )
                if load > 2:
                    violations.append(
                        f"{RULE_CAP_LOOP} (cusp {cusp!r}, pants {p1!r})"
                    )
    return violations


# -- isomorphism of intersection patterns -----------------------------------


def _pair_label(pairs: dict, a: str, b: str):
    """Label of the ordered pair (a, b): tuple of per-geodesic side words."""
    key = (a, b) if a < b else (b, a)
    sides_list = pairs.get(key, [])
    words = []
    for sides in sides_list:
        if key == (a, b):
            words.append(sides[0] + sides[1])
        else:
            words.append(sides[1] + sides[0])
    return tuple(sorted(words))


def _isomorphic(left: PantsConfig, right: PantsConfig) -> bool:
    """Match the edge-labeled intersection graphs of the two patterns."""
    lids, rids = left.ids(), right.ids()
    if len(lids) != len(rids):
        return False
    lpairs, rpairs = left.pair_geodesics(), right.pair_geodesics()

    def signature(ids, pairs, x):
        return tuple(sorted(_pair_label(pairs, x, y) for y in ids if y != x))

    lsig = {x: signature(lids, lpairs, x) for x in lids}
    rsig = {x: signature(rids, rpairs, x) for x in rids}
    if sorted(lsig.values()) != sorted(rsig.values()):
        return False

    order = sorted(lids, key=lambda x: (lsig[x], x))
    assigned = {}
    used = set()

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in rids:
            if y in used or rsig[y] != lsig[x]:
                continue
            if all(
                _pair_label(lpairs, x, seen) == _pair_label(rpairs, y, assigned[seen])
                for seen in assigned
            ):
                assigned[x] = y
                used.add(y)
                if backtrack(i + 1):
                    return True
                del assigned[x]
                used.remove(y)
        return False

    return backtrack(0)


# -- canonical configurations ------------------------------------------------

_INF = Slope(1, 0)
_ZERO = Slope(0, 1)
_ONE = Slope(1, 1)


def _chain_rows(n: int, cusp_name) -> dict:
    rows = {}
    for i in range(1, n + 1):
        rows[f"a{i}"] = [
            Loop(cusp_name(i - 1), _INF),
            Loop(cusp_name(i), _ZERO),
            Loop(cusp_name(i + 1), _INF),
        ]
    return rows


def _cycle_rows(n: int) -> dict:
    rows = {}
    if n == 2:
        rows["a1"] = [Loop("c1", _ZERO), Loop("c2", _INF), Loop("c2", _INF)]
        rows["a2"] = [Loop("c1", _INF), Loop("c1", _INF), Loop("c2", _ZERO)]
        return rows
    for i in range(1, n + 1):
        prev = (i - 2) % n + 1
        nxt = i % n + 1
        rows[f"a{i}"] = [
            Loop(f"c{prev}", _INF),
            Loop(f"c{i}", _ZERO),
            Loop(f"c{nxt}", _INF),
        ]
    return rows


def _cycle_edges(n: int) -> list:
    if n == 2:
        return [Geodesic.of("a1", "a2", "N", "N"), Geodesic.of("a1", "a2", "N", "N")]
    return [
        Geodesic.of(f"a{i}", f"a{i % n + 1}", "N", "N") for i in range(1, n + 1)
    ]


def _with_blues(rows: dict, n: int, hub: Optional[str] = None) -> tuple:
    """Attach one pendant pants to each of a1..an at its slope-0 cusp.

    The pendants' third loops share the hub cusp when one is given and
    otherwise get private cusps.
    """
    edges = []
    for i in range(1, n + 1):
        core = f"a{i}"
        anchor = next(lp.cusp for lp in rows[core] if lp.slope == _ZERO)
        rows[f"b{i}"] = [
            Loop(anchor, _INF),
            Loop(anchor, _INF),
            Loop(hub if hub is not None else f"d{i}", _ZERO),
        ]
        edges.append(Geodesic.of(core, f"b{i}", "S", "N"))
    return rows, edges


def _matching_slope(others: list, pair: set) -> Slope:
    # proper 3-coloring of the pairs from a 4-set by perfect matchings
    e1, e2, e3, e4 = sorted(others)
    if pair in ({e1, e2}, {e3, e4}):
        return _ZERO
    if pair in ({e1, e3}, {e2, e4}):
        return _ONE
    return _INF


def _pen_rows(points: list, universe: list) -> dict:
    rows = {}
    for triple in itertools.combinations(points, 3):
        pid = "p" + "".join(str(x) for x in triple)
        loops = []
        for a in triple:
            others = [x for x in universe if x != a]
            loops.append(Loop(f"c{a}", _matching_slope(others, set(triple) - {a})))
        rows[pid] = loops
    return rows


def _pen_edges(rows: dict) -> list:
    edges = []
    for p, q in itertools.combinations(sorted(rows), 2):
        if len(set(p[1:]) & set(q[1:])) == 2:
            edges.append(Geodesic.of(p, q, "N", "N"))
    return edges


def _tet8_rows() -> dict:
    two_one = Slope(2, 1)
    return {
        "p1": [Loop("c1", _ZERO), Loop("c2", _INF), Loop("c4", _INF)],
        "p2": [Loop("c1", _INF), Loop("c2", _ZERO), Loop("c3", _INF)],
        "p3": [Loop("c2", _INF), Loop("c3", _ZERO), Loop("c4", _INF)],
        "p4": [Loop("c1", _INF), Loop("c3", _INF), Loop("c4", _ZERO)],
        "p5": [Loop("c2", _ONE), Loop("c3", two_one), Loop("c4", _ONE)],
        "p6": [Loop("c1", _ONE), Loop("c3", _ONE), Loop("c4", two_one)],
        "p7": [Loop("c1", two_one), Loop("c2", _ONE), Loop("c4", _ONE)],
        "p8": [Loop("c1", _ONE), Loop("c2", two_one), Loop("c3", _ONE)],
    }


_TET8_DOUBLES = (("p1", "p7"), ("p2", "p8"), ("p3", "p5"), ("p4", "p6"))
_TET8_DISJOINT = (("p1", "p3"), ("p2", "p4"), ("p5", "p7"), ("p6", "p8"))


def _tet8_edges() -> list:
    edges = []
    skip = {tuple(sorted(p)) for p in _TET8_DISJOINT}
    double = {tuple(sorted(p)) for p in _TET8_DOUBLES}
    names = sorted(_tet8_rows())
    for a, b in itertools.combinations(names, 2):
        if (a, b) in skip:
            continue
        edges.append(Geodesic.of(a, b, "N", "N"))
        if (a, b) in double:
            edges.append(Geodesic.of(a, b, "N", "N"))
    return edges


def _oct8_rows() -> dict:
    rows = {}
    for i in range(1, 7):
        prev = (i - 2) % 6 + 1
        nxt = i % 6 + 1
        rows[f"s{i}"] = [
            Loop(f"c{prev}", _INF),
            Loop(f"c{i}", _ZERO),
            Loop(f"c{nxt}", _INF),
        ]
    rows["h1"] = [Loop("c1", _ZERO), Loop("c3", _ZERO), Loop("c5", _ZERO)]
    rows["h2"] = [Loop("c2", _ZERO), Loop("c4", _ZERO), Loop("c6", _ZERO)]
    return rows


def _oct8_edges() -> list:
    edges = [Geodesic.of(f"s{i}", f"s{i % 6 + 1}", "N", "N") for i in range(1, 7)]
    for i in (2, 4, 6):
        edges.append(Geodesic.of("h1", f"s{i}", "N", "N"))
    for i in (1, 3, 5):
        edges.append(Geodesic.of("h2", f"s{i}", "N", "N"))
    return edges


def canonical_config(t: UnionType) -> PantsConfig:
    """Build a reference configuration realizing the named union type."""
    kind, count = t.kind, t.count

    if kind == "A":
        rows = _chain_rows(count, lambda i: f"c{i}")
        edges = [
            Geodesic.of(f"a{i}", f"a{i + 1}", "N", "N") for i in range(1, count)
        ]
        return PantsConfig.build(rows, edges)

    if kind == "B":
        n = count // 2
        rows = _chain_rows(n, lambda i: f"c{i}")
        rows, sn_edges = _with_blues(rows, n)
        edges = [
            Geodesic.of(f"a{i}", f"a{i + 1}", "N", "N") for i in range(1, n)
        ]
        return PantsConfig.build(rows, edges + sn_edges)

    if kind == "T3":
        rows = {}
        for i, slope in enumerate((_ZERO, _ONE, _INF), start=1):
            rows[f"p{i}"] = [
                Loop("e1", slope),
                Loop("e2", slope),
                Loop(f"t{i}", _ZERO),
            ]
        edges = [
            Geodesic.of(a, b, "N", "N")
            for a, b in itertools.combinations(sorted(rows), 2)
        ]
        return PantsConfig.build(rows, edges)

    if kind == "T4":
        rows = {"h": [Loop("c1", _ZERO), Loop("c2", _ZERO), Loop("c3", _ZERO)]}
        spans = {(1, 2): "p1", (2, 3): "p2", (3, 1): "p3"}
        edges = []
        for (u, v), pid in spans.items():
            rows[pid] = [
                Loop(f"c{u}", _INF),
                Loop(f"c{v}", _INF),
                Loop(f"t{pid}", _ZERO),
            ]
            edges.append(Geodesic.of("h", pid, "N", "N"))
        return PantsConfig.build(rows, edges)

    if kind in ("WhiHat", "WhiPrimeHat"):
        rows = _cycle_rows(count)
        edges = _cycle_edges(count)
        return PantsConfig.build(rows, edges, framing=0 if kind == "WhiHat" else 1)

    if kind in ("Whi", "WhiPrime"):
        n = count // 2
        rows = _cycle_rows(n)
        cycle = _cycle_edges(n)
        rows, sn_edges = _with_blues(rows, n, hub="c0")
        return PantsConfig.build(
            rows, cycle + sn_edges, framing=0 if kind == "Whi" else 1
        )

    if kind == "Bor6":
        rows, edges = {}, []
        for i in range(1, 4):
            nxt = i % 3 + 1
            prev = (i - 2) % 3 + 1
            rows[f"A{i}"] = [
                Loop(f"c{i}", _ZERO),
                Loop(f"c{nxt}", _INF),
                Loop(f"c{nxt}", _INF),
            ]
            rows[f"B{i}"] = [
                Loop(f"c{i}", _ZERO),
                Loop(f"c{prev}", _INF),
                Loop(f"c{prev}", _INF),
            ]
        for i in range(1, 4):
            nxt = i % 3 + 1
            edges.append(Geodesic.of(f"A{i}", f"B{nxt}", "N", "N"))
            edges.append(Geodesic.of(f"A{i}", f"B{nxt}", "N", "N"))
            edges.append(Geodesic.of(f"A{i}", f"A{nxt}", "N", "S"))
            edges.append(Geodesic.of(f"B{i}", f"B{nxt}", "S", "N"))
        return PantsConfig.build(rows, edges)

    if kind == "Mag4":
        three_one, two_one = Slope(3, 1), Slope(2, 1)
        rows = {
            "p1": [Loop("c1", _INF), Loop("c2", _ZERO), Loop("c3", _INF)],
            "p2": [Loop("c1", _ONE), Loop("c2", two_one), Loop("c3", _ONE)],
            "p3": [Loop("c1", three_one), Loop("c2", _ONE), Loop("c3", _INF)],
            "p4": [Loop("c1", _INF), Loop("c2", _ONE), Loop("c3", three_one)],
        }
        edges = []
        for other in ("p1", "p3", "p4"):
            edges.append(Geodesic.of("p2", other, "N", "N"))
            edges.append(Geodesic.of("p2", other, "N", "N"))
        for a, b in itertools.combinations(("p1", "p3", "p4"), 2):
            edges.append(Geodesic.of(a, b, "N", "N"))
        return PantsConfig.build(rows, edges)

    if kind == "Tet8":
        return PantsConfig.build(_tet8_rows(), _tet8_edges())

    if kind == "TetHat2":
        rows = {
            "p1": [Loop("c1", _INF), Loop("c2", _ZERO), Loop("c3", _INF)],
            "p2": [Loop("c1", _ONE), Loop("c2", Slope(2, 1)), Loop("c3", _ONE)],
        }
        edges = [
            Geodesic.of("p1", "p2", "N", "N"),
            Geodesic.of("p1", "p2", "N", "N"),
        ]
        return PantsConfig.build(rows, edges, framing=0)

    if kind == "Pen10":
        rows = _pen_rows([1, 2, 3, 4, 5], [1, 2, 3, 4, 5])
        return PantsConfig.build(rows, _pen_edges(rows))

    if kind == "PenHat4":
        rows = _pen_rows([1, 2, 3, 4], [1, 2, 3, 4, 5])
        return PantsConfig.build(rows, _pen_edges(rows))

    if kind == "Oct8":
        return PantsConfig.build(_oct8_rows(), _oct8_edges())

    if kind == "OctHat4":
        rows = {k: v for k, v in _oct8_rows().items() if k in ("s3", "s4", "s5", "h2")}
        edges = [
            Geodesic.of("s3", "s4", "N", "N"),
            Geodesic.of("s4", "s5", "N", "N"),
            Geodesic.of("h2", "s3", "N", "N"),
            Geodesic.of("h2", "s5", "N", "N"),
        ]
        return PantsConfig.build(rows, edges)

    if kind in _INFINITE_KINDS:
        n = 3
        rows = _chain_rows(n, lambda i: f"c{i}")
        rows, sn_edges = _with_blues(rows, n)
        edges = [Geodesic.of(f"a{i}", f"a{i + 1}", "N", "N") for i in range(1, n)]
        return PantsConfig.build(
            rows,
            edges + sn_edges,
            finite=False,
            ends=1 if kind == "BInf" else 2,
        )

    raise ValueError(f"no canonical configuration for {kind!r}")


# -- classification ----------------------------------------------------------


def _connected(config: PantsConfig) -> bool:
    ids = config.ids()
    if len(ids) <= 1:
        return True
    adjacency = {pid: set() for pid in ids}
    for g in config.geodesics:
        a, b = g.pair
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = {ids[0]}
    frontier = [ids[0]]
    while frontier:
        for nxt in adjacency[frontier.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return len(seen) == len(ids)


def _match_candidates(config: PantsConfig, kinds, fail_reason: str) -> ClassifyResult:
    for t in kinds:
        if _isomorphic(config, canonical_config(t)):
            return t
    return Impossible(fail_reason)


def _classify_two_doubled(config: PantsConfig) -> ClassifyResult:
    a, b = config.ids()
    per_cusp = {}
    for pid in (a, b):
        for lp in config.loops_of(pid):
            per_cusp.setdefault(lp.cusp, {a: 0, b: 0})[pid] += 1
    shared = sorted(
        tuple(sorted(counts.values()))
        for counts in per_cusp.values()
        if counts[a] and counts[b]
    )
    if shared == [(1, 2), (1, 2)]:
        if config.framing == 0:
            return UnionType("WhiHat", 2)
        if config.framing == 1:
            return UnionType("WhiPrimeHat", 2)
        return Ambiguous(
            candidates=(UnionType("WhiHat", 2), UnionType("WhiPrimeHat", 2)),
            note="the two cyclic flavors differ only by their neighborhoods",
        )
    if shared == [(1, 1), (1, 1), (1, 1)]:
        if config.framing == 0:
            return UnionType("TetHat2")
        if config.framing == 1:
            return Impossible(
                "rule: the opposite boundary identification of this doubly"
                " intersecting pair lives in a graph manifold, which is"
                " never hyperbolic"
            )
        return Ambiguous(
            candidates=(UnionType("TetHat2"),),
            note="the alternative boundary identification is a graph"
            " manifold and cannot be hyperbolic",
        )
    return Impossible(
        "rule: two pants meeting at two geodesics occupy their cusps in one"
        " of two boundary patterns only"
    )


def _classify_doubles(config: PantsConfig) -> ClassifyResult:
    n = len(config.ids())
    if n == 2:
        return _classify_two_doubled(config)
    fail = (
        "rule: a union with a doubly intersecting pair completes to one of"
        " four sporadic patterns, and this configuration matches none"
    )
    if n == 4:
        if _isomorphic(config, canonical_config(UnionType("Whi", 4))):
            if config.framing == 1:
                return Impossible(
                    "rule: the primed four-element cyclic union closes up"
                    " with two extra pants into the six-element pattern"
                )
            return UnionType("Whi", 4)
        return _match_candidates(config, [UnionType("Mag4")], fail)
    if n == 6:
        return _match_candidates(config, [UnionType("Bor6")], fail)
    if n == 8:
        return _match_candidates(config, [UnionType("Tet8")], fail)
    return Impossible(fail)


def _classify_separating(config: PantsConfig, pairs: dict) -> ClassifyResult:
    blues, cores = {}, {}
    nn_pairs = []
    for pair, sides_list in pairs.items():
        sides = sides_list[0]
        if "S" in sides:
            s_side = pair[sides.index("S")]
            n_side = pair[sides.index("N")]
            blues.setdefault(n_side, []).append(pair)
            cores.setdefault(s_side, []).append(n_side)
        else:
            nn_pairs.append(pair)

    degree = {pid: 0 for pid in config.ids()}
    for pair in pairs:
        for pid in pair:
            degree[pid] += 1
    for blue in blues:
        if degree[blue] != 1:
            return Impossible(
                "rule: the pants on the non-separating side of a"
                " separating-type intersection meets no other pants in a"
                " complete union"
            )
    for core, pendants in cores.items():
        if len(pendants) > 1:
            return Impossible(
                "rule: a pants carries at most one separating-type"
                " intersection in a complete union"
            )
    plain = [
        pid for pid in config.ids() if pid not in blues and pid not in cores
    ]
    if plain:
        return Impossible(
            "rule: the separating-type pattern propagates along the union,"
            " so every consecutive pants acquires a parallel partner"
        )

    core_ids = sorted(cores)
    core_degree = {pid: 0 for pid in core_ids}
    for a, b in nn_pairs:
        if a not in core_degree or b not in core_degree:
            return Impossible(
                "rule: the separating-type pattern propagates along the"
                " union, so every consecutive pants acquires a parallel"
                " partner"
            )
        core_degree[a] += 1
        core_degree[b] += 1
    k = len(core_ids)
    if any(d > 2 for d in core_degree.values()):
        return Impossible(
            "rule: a chain of pants with parallel partners never branches"
        )
    if len(nn_pairs) == k - 1:
        return UnionType("B", 2 * k)
    if len(nn_pairs) == k and all(d == 2 for d in core_degree.values()):
        if k % 2 == 1:
            if config.framing == 1:
                return Impossible(
                    "rule: the primed cyclic flavor needs an even cycle"
                )
            return UnionType("Whi", 2 * k)
        if config.framing == 0:
            return UnionType("Whi", 2 * k)
        if config.framing == 1:
            return UnionType("WhiPrime", 2 * k)
        return Ambiguous(
            candidates=(UnionType("Whi", 2 * k), UnionType("WhiPrime", 2 * k)),
            note="the two cyclic flavors differ only by their neighborhoods",
        )
    return Impossible(
        "rule: a chain of pants with parallel partners is a path or a"
        " single cycle"
    )


def _cusp_entries(config: PantsConfig) -> dict:
    by_cusp = {}
    for pid, loops in config.pants:
        for lp in loops:
            by_cusp.setdefault(lp.cusp, []).append((pid, lp.slope))
    return by_cusp


def _classify_plain(config: PantsConfig, pairs: dict) -> ClassifyResult:
    by_cusp = _cusp_entries(config)

    if any(_pen10_cusp_signature(entries) for entries in by_cusp.values()):
        return _match_candidates(
            config,
            [UnionType("Pen10")],
            "rule: six boundary loops in three parallel classes fill a cusp"
            " only in the ten-element pattern",
        )

    def two_by_two(entries) -> bool:
        if len(entries) != 4 or len({pid for pid, _ in entries}) != 4:
            return False
        classes = {}
        for _, slope in entries:
            classes[slope] = classes.get(slope, 0) + 1
        return sorted(classes.values()) == [2, 2]

    if any(two_by_two(entries) for entries in by_cusp.values()):
        return _match_candidates(
            config,
            [UnionType("OctHat4"), UnionType("Oct8")],
            "rule: two parallel pairs of crossing boundary loops in a cusp"
            " force the four- or eight-element completion",
        )

    def triple_crossing(entries) -> bool:
        if len(entries) != 3 or len({pid for pid, _ in entries}) != 3:
            return False
        return len({slope for _, slope in entries}) == 3

    if any(triple_crossing(entries) for entries in by_cusp.values()):
        return _match_candidates(
            config,
            [UnionType("T3"), UnionType("PenHat4")],
            "rule: three mutually crossing boundary loops in a cusp force"
            " the triple, the four-element, or the ten-element completion",
        )

    degree = {pid: 0 for pid in config.ids()}
    for pair in pairs:
        for pid in pair:
            degree[pid] += 1
    if any(d >= 3 for d in degree.values()):
        return _match_candidates(
            config,
            [UnionType("T4")],
            "rule: with generic boundary patterns, a pants meeting three"
            " others completes to exactly the four-element tripod",
        )

    n = len(config.ids())
    if len(pairs) == n - 1:
        return UnionType("A", n)
    if len(pairs) == n and all(d == 2 for d in degree.values()):
        if n % 2 == 1:
            if config.framing == 1:
                return Impossible(
                    "rule: the primed cyclic flavor needs an even cycle"
                )
            return UnionType("WhiHat", n)
        if config.framing == 0:
            return UnionType("WhiHat", n)
        if config.framing == 1:
            return UnionType("WhiPrimeHat", n)
        return Ambiguous(
            candidates=(UnionType("WhiHat", n), UnionType("WhiPrimeHat", n)),
            note="the two cyclic flavors differ only by their neighborhoods",
        )
    return Impossible(
        "rule: pants meeting only along single non-separating geodesics"
        " arrange in a path or a single cycle"
    )


def classify(config: PantsConfig) -> ClassifyResult:
    """Name the union pattern, or explain why none fits.

    Local rule violations come back as Impossible with the broken rules
    cited.  A disconnected configuration raises ValueError: each connected
    component is a union of its own and must be classified separately.
    """
    violations = validate_local(config)
    if violations:
        return Impossible("; ".join(violations))

    if not config.finite:
        return UnionType("BInf" if config.ends == 1 else "WhiInf")

    if not _connected(config):
        raise ValueError("configuration is disconnected; classify one component")

    pairs = config.pair_geodesics()
    if any(len(sides_list) == 2 for sides_list in pairs.values()):
        return _classify_doubles(config)
    if any("S" in sides for sides_list in pairs.values() for sides in sides_list):
        return _classify_separating(config, pairs)
    return _classify_plain(config, pairs)


# -- ambient manifolds --------------------------------------------------------


def ambient_consequence(t: UnionType) -> dict:
    """What the union type says about the ambient hyperbolic manifold."""
    kind, count = t.kind, t.count
    if kind in ("A", "B", "T3", "T4"):
        return {"kind": "general", "manifold": None}
    if kind == "Whi":
        return {"kind": "determines", "manifold": f"W{count // 2}"}
    if kind == "WhiPrime":
        return {"kind": "determines", "manifold": f"WPrime{count // 2}"}
    determined = {"Bor6": "WPrime2", "Mag4": "M3", "Tet8": "M4", "Pen10": "M5", "Oct8": "M6"}
    if kind in determined:
        return {"kind": "determines", "manifold": determined[kind]}
    if kind == "WhiHat":
        return {"kind": "dehn_filling_of", "manifold": f"W{count}"}
    if kind == "WhiPrimeHat":
        return {"kind": "dehn_filling_of", "manifold": f"WPrime{count}"}
    filled = {"TetHat2": "M4", "PenHat4": "M5", "OctHat4": "M6"}
    if kind in filled:
        return {"kind": "dehn_filling_of", "manifold": filled[kind]}
    if kind == "WhiInf":
        return {"kind": "determines", "manifold": "WInfinity"}
    if kind == "BInf":
        return {"kind": "determines", "manifold": "WInfinityHalf"}
    raise ValueError(f"unknown union kind {kind!r}")
