"""Command-line surface for the pants-union toolkit.

Every subcommand prints one JSON document: an envelope with a schema
version, a status in {ok, invalid-input, impossible, ambiguous}, the
payload, and the list of rule citations that produced a non-ok status.
Output is deterministic: keys are sorted, exact numbers are rendered as
fraction strings, and identical invocations produce identical bytes.

Exit codes: 0 ok, 2 invalid-input, 3 impossible or ambiguous.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from . import bounds, holonomy, homology, region
from .pants import (
    Ambiguous,
    Impossible,
    PantsConfig,
    UnionType,
    ambient_consequence,
    canonical_config,
    classify,
)
from .scalars import ComplexScalar, QuadExt

RESULT_SCHEMA = 1
TOLERANCE_ENV = "PANTSUNION_FLOAT_TOL"

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IMPOSSIBLE = 3

_STATUS_EXIT = {
    "ok": EXIT_OK,
    "invalid-input": EXIT_INVALID,
    "impossible": EXIT_IMPOSSIBLE,
    "ambiguous": EXIT_IMPOSSIBLE,
}


def default_tolerance() -> float:
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None:
        return 1e-9
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValueError(f"{TOLERANCE_ENV} must be a float, got {raw!r}") from exc
    if not value > 0:
        raise ValueError(f"{TOLERANCE_ENV} must be positive")
    return value


def jsonable(value):
    """Recursively convert exact scalars into deterministic JSON values."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (ComplexScalar, QuadExt)):
        return str(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in value]
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=repr)
        return items
    if is_dataclass(value):
        return jsonable(asdict(value))
    return str(value)


def render_result(status: str, payload, citations=()) -> str:
    document = {
        "schema": RESULT_SCHEMA,
        "status": status,
        "payload": jsonable(payload),
        "citations": list(citations),
    }
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    handle = tempfile.NamedTemporaryFile(
        "w", dir=directory, prefix=".pantsunion.", suffix=".tmp", delete=False
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    except BaseException:
        os.unlink(handle.name)
        raise


class InputError(ValueError):
    """Bad user input: malformed JSON, unparsable flags, unknown names."""


def read_json_document(source: str):
    if source == "-":
        text = sys.stdin.read()
        label = "standard input"
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
        label = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"malformed JSON in {label} at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


_COMPLEX_FLAG = re.compile(
    r"""^(?P<real>[+-]?\d+(?:/\d+)?)?
        (?P<imag>[+-](?:\d+(?:/\d+)?)?|(?:\d+(?:/\d+)?)?)i$
        |^(?P<pure>[+-]?\d+(?:/\d+)?)$""",
    re.VERBOSE,
)


def parse_complex_flag(text: str) -> ComplexScalar:
    """Parse the a+bi flag syntax with rational a and b.

    Accepted forms: "2", "-1/2", "2i", "-i", "1+2i", "3/2-1/4i".
    Quadratic values are JSON-only; see the schema docs.
    """
    cleaned = text.strip().replace(" ", "")
    match = _COMPLEX_FLAG.match(cleaned)
    if not match:
        raise InputError(
            f"cannot parse complex value {text!r}; use rational a+bi, like 2i or 3/2-1/4i"
        )
    if match.group("pure") is not None:
        return ComplexScalar.from_rational(Fraction(match.group("pure")))
    real = Fraction(match.group("real")) if match.group("real") else Fraction(0)
    imag_text = match.group("imag")
    if imag_text in ("", "+"):
        imag = Fraction(1)
    elif imag_text == "-":
        imag = Fraction(-1)
    else:
        imag = Fraction(imag_text)
    return ComplexScalar.from_rational(real, imag)


def parse_complex_json(data) -> ComplexScalar:
    """Parse the JSON complex form {"a": .., "b": .., "d": ..}.

    The value is a + b*sqrt(d)*i; d defaults to 1 (plain rational a + bi).
    """
    if not isinstance(data, dict) or "a" not in data or "b" not in data:
        raise InputError('complex JSON values need fields "a" and "b" (optional "d")')
    try:
        a = Fraction(str(data["a"]))
        b = Fraction(str(data["b"]))
        d = int(data.get("d", 1))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad complex JSON value: {exc}") from exc
    if d == 1:
        return ComplexScalar.from_rational(a, b)
    return ComplexScalar.from_quad(QuadExt(a), QuadExt(0, b, d))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse rational {text!r}") from exc


# -- classify ------------------------------------------------------------------


def _type_payload(t: UnionType) -> dict:
    ambient = ambient_consequence(t)
    payload = {"type": t.kind, "n": t.count, "ambient": ambient["kind"]}
    if ambient["manifold"] is not None:
        payload["manifold"] = ambient["manifold"]
    return payload


def run_classify(args) -> tuple:
    data = read_json_document(args.input)
    try:
        config = PantsConfig.from_dict(data)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    try:
        result = classify(config)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if isinstance(result, UnionType):
        return "ok", _type_payload(result), []
    if isinstance(result, Impossible):
        citations = [part for part in result.reason.split("; ") if part]
        return "impossible", {"reason": result.reason}, citations
    assert isinstance(result, Ambiguous)
    payload = {
        "candidates": [_type_payload(t) for t in result.candidates],
        "note": result.note,
    }
    note = result.note or "the framing bit is absent and both flavors fit"
    return "ambiguous", payload, [note]


# -- region --------------------------------------------------------------------


def _constraint_name(constraint) -> str:
    return f"{constraint.kind}({constraint.m},{constraint.n})"


def run_region(args) -> tuple:
    actions = [args.tau is not None or args.input is not None,
               args.extremal, args.arcs, args.verify_reduction is not None]
    if sum(bool(a) for a in actions) != 1:
        raise InputError(
            "choose exactly one of --tau/--input, --extremal, --arcs, --verify-reduction"
        )

    if args.extremal:
        bound = region.min_argument()
        payload = {
            "angle": bound.angle,
            "max_angle": bound.max_angle,
            "tan_sq": bound.tan_sq,
            "witness": str(bound.witness),
        }
        return "ok", payload, []

    if args.arcs:
        arcs = region.boundary_arcs()
        payload = {
            "count": len(arcs),
            "arcs": [
                {
                    "constraint": _constraint_name(arc.constraint),
                    "center": arc.center,
                    "radius": arc.radius,
                    "start_angle": arc.start.angle,
                    "end_angle": arc.end.angle,
                }
                for arc in arcs
            ],
        }
        return "ok", payload, []

    if args.verify_reduction is not None:
        grid, mn_bound = args.verify_reduction
        ok = region.verify_reduction(grid, mn_bound)
        return "ok", {"verified": ok, "grid": grid, "mn_bound": mn_bound}, []

    if args.tau is not None:
        tau = parse_complex_flag(args.tau)
    else:
        document = read_json_document(args.input)
        tau = parse_complex_json(document.get("tau", document))
    try:
        verdict = region.membership(tau, tol=args.tolerance)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {
        "membership": verdict.verdict,
        "violated": [_constraint_name(c) for c in verdict.violated],
        "equalities": [_constraint_name(c) for c in verdict.equalities],
    }
    citations = [_constraint_name(c) for c in verdict.violated]
    return "ok", payload, citations


# -- holonomy ------------------------------------------------------------------


def run_holonomy(args) -> tuple:
    actions = [args.normalization, args.b_type, args.residual]
    if sum(bool(a) for a in actions) != 1:
        raise InputError("choose exactly one of --normalization, --b-type, --residual")

    if args.normalization:
        return "ok", {"lower_left_constant": holonomy.solve_meridian_normalization()}, []

    if args.b_type:
        modulus = holonomy.b_type_modulus()
        trace = holonomy.pair_commutator(modulus.tau).trace()
        return "ok", {"tau": str(modulus.tau), "commutator_trace": str(trace)}, []

    if args.tau is None or args.tau_prime is None:
        raise InputError("--residual needs --tau and --tau-prime")
    tau = parse_complex_flag(args.tau)
    tau_prime = parse_complex_flag(args.tau_prime)
    residual = holonomy.modulus_equality_residual(tau, tau_prime)
    certified = residual == ComplexScalar.from_rational(-4)
    payload = {
        "residual": str(residual),
        "moduli_equal_certified": certified,
    }
    return "ok", payload, []


# -- enumerate -----------------------------------------------------------------


def run_enumerate(args) -> tuple:
    if args.family == "whi3":
        solutions = sorted(homology.enumerate_whi3())
        return "ok", {"family": "whi3", "solutions": solutions}, []
    enumeration = homology.enumerate_tet2(args.bound)
    payload = {
        "family": "tet2",
        "search_bound": enumeration.search_bound,
        "nonzero_case": sorted(enumeration.nonzero_case),
        "zero_case": sorted(enumeration.zero_case),
    }
    return "ok", payload, []


# -- norm ----------------------------------------------------------------------


def run_norm(args) -> tuple:
    try:
        polytope = homology.catalog_norm_ball(args.ball)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    vector = [parse_rational(part) for part in args.vector.split(",")]
    if len(vector) != polytope.dimension:
        raise InputError(
            f"{args.ball} norms live on {polytope.dimension} coordinates,"
            f" got {len(vector)}"
        )
    value = homology.thurston_norm(polytope, vector)
    payload = {"ball": args.ball, "vector": vector, "norm": value}
    return "ok", payload, []


# -- bounds --------------------------------------------------------------------

_CENSUS_ENTRY = re.compile(r"^(t3|t4|chain(\d+)|cycle(\d+))=(\d+)$")


def parse_census(text: str) -> bounds.TypeCensus:
    chains, cycles = {}, {}
    t3 = t4 = 0
    for raw in text.split(","):
        entry = raw.strip()
        if not entry:
            continue
        match = _CENSUS_ENTRY.match(entry)
        if not match:
            raise InputError(
                f"bad census entry {entry!r}; use t3=K, t4=K, chainN=K, or cycleN=K"
            )
        count = int(match.group(4))
        if match.group(1) == "t3":
            t3 += count
        elif match.group(1) == "t4":
            t4 += count
        elif match.group(2) is not None:
            n = int(match.group(2))
            chains[n] = chains.get(n, 0) + count
        else:
            n = int(match.group(3))
            cycles[n] = cycles.get(n, 0) + count
    try:
        return bounds.TypeCensus(
            chains=tuple(sorted(chains.items())),
            cycles=tuple(sorted(cycles.items())),
            t3=t3,
            t4=t4,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def run_bounds(args) -> tuple:
    actions = [
        args.census is not None,
        args.catalog is not None,
        args.montesinos is not None,
        args.convergence is not None,
        args.core_length is not None,
        args.normalized_length is not None,
    ]
    if sum(bool(a) for a in actions) != 1:
        raise InputError(
            "choose exactly one of --census, --catalog, --montesinos,"
            " --convergence, --core-length, --normalized-length"
        )

    if args.census is not None:
        census = parse_census(args.census)
        if (args.vol_mult_voct is None) == (args.vol is None):
            raise InputError("--census needs exactly one of --vol-mult-voct or --vol")
        if args.vol_mult_voct is not None:
            volume = bounds.SymbolicVolume(oct_multiple=parse_rational(args.vol_mult_voct))
        else:
            volume = args.vol
        try:
            payload = bounds.counting_bound_check(census, volume)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        return "ok", payload, []

    if args.catalog is not None:
        try:
            payload = bounds.catalog_counting_check(args.catalog, args.n)
        except (KeyError, ValueError) as exc:
            raise InputError(str(exc)) from exc
        return "ok", payload, []

    if args.montesinos is not None:
        slope = "inf" if args.slope is None else args.slope
        try:
            ms = bounds.MontesinosSlope(args.montesinos, slope)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        hyperbolic = bounds.montesinos_hyperbolic(ms)
        payload = {
            "n": ms.n,
            "slope": "inf" if ms.is_infinite else ms.r,
            "hyperbolic": hyperbolic,
        }
        return "ok", payload, []

    if args.convergence is not None:
        try:
            payload = bounds.convergence_report(args.convergence)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        return "ok", payload, []

    if args.core_length is not None:
        try:
            value = bounds.core_length_bound(args.core_length)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        return "ok", {"length": args.core_length, "core_length_bound": value}, []

    parts = [p for p in args.normalized_length.split(",") if p]
    if len(parts) not in (1, 2):
        raise InputError("--normalized-length takes n or n,r")
    n = int(parts[0])
    r = parse_rational(parts[1]) if len(parts) == 2 else 0
    try:
        payload = bounds.normalized_length_lower_bound(n, r)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = dict(payload)
    payload["n"] = n
    payload["r"] = Fraction(r)
    return "ok", payload, []


# -- plot and report -------------------------------------------------------------


def run_plot(args) -> tuple:
    from . import report

    if args.what == "region":
        text = region.render_svg(resolution=args.resolution)
    else:
        if args.ball is None:
            raise InputError("--what norm-ball needs --ball")
        try:
            polytope = homology.catalog_norm_ball(args.ball)
        except (KeyError, ValueError) as exc:
            raise InputError(str(exc)) from exc
        text = report.polytope_projection_svg(polytope, args.ball)
    atomic_write(args.output, text)
    return "ok", {"written": args.output, "what": args.what}, []


def run_report(args) -> tuple:
    from . import report

    written = report.build_report(args.output_dir)
    return "ok", {"output_dir": args.output_dir, "written": written}, []


# -- schema docs ------------------------------------------------------------------

SCHEMA_DOCS = """\
Input document: PantsConfig ("schema": 1)

{
  "schema": 1,
  "pants": {
    "<pants id>": [
      {"cusp": "<cusp id>", "slope": <slope>},
      {"cusp": "<cusp id>", "slope": <slope>},
      {"cusp": "<cusp id>", "slope": <slope>}
    ]
  },
  "geodesics": [
    {"pants": ["<id a>", "<id b>"], "sides": ["N" | "S", "N" | "S"]}
  ],
  "framing": 0 | 1,          (optional: neighborhood flavor of cyclic families)
  "finite": true | false,    (optional, default true)
  "ends": 1 | 2              (required when finite is false)
}

Each pants has exactly 3 boundary loops. A slope is 0, 1, "inf", or a
primitive integer pair [p, q] meaning p*meridian + q*longitude. Every
geodesic record is one intersection geodesic of the named pants pair;
sides[i] says whether it is non-separating ("N") or separating ("S")
inside pants[i]. A pair meeting in two geodesics appears twice.

Complex values in JSON: {"a": "93/128", "b": "1/128", "d": 55} means
a + b*sqrt(d)*i with rational a, b; omit "d" (or use 1) for plain
rational a + bi.  Flag syntax accepts rational a+bi only, e.g. "2i",
"3/2-1/4i".

Result envelope ("schema": 1) printed by every subcommand:

{
  "schema": 1,
  "status": "ok" | "invalid-input" | "impossible" | "ambiguous",
  "payload": { ... subcommand-specific ... },
  "citations": ["rule: ...", ...]
}

Exact rationals are rendered as fraction strings ("55/8649"); exit code
is 0 for ok, 2 for invalid-input, 3 for impossible or ambiguous.
"""


def run_schema_docs(args) -> tuple:
    return "text", SCHEMA_DOCS, []


# -- argument parsing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pantsunion",
        description="Classify unions of totally geodesic three-punctured spheres"
        " and evaluate the associated exact invariants.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("classify", help="classify a pants configuration")
    p.add_argument("--input", required=True, help="configuration JSON file, or - for stdin")
    p.set_defaults(handler=run_classify)

    p = sub.add_parser("region", help="cusp-modulus region queries")
    p.add_argument("--tau", help="modulus as rational a+bi, e.g. 2i")
    p.add_argument("--input", help='JSON file with {"tau": {"a","b","d"}}, or - for stdin')
    p.add_argument("--extremal", action="store_true", help="extremal argument and witness")
    p.add_argument("--arcs", action="store_true", help="boundary arcs of the region")
    p.add_argument(
        "--verify-reduction",
        nargs=2,
        type=int,
        metavar=("GRID", "MN_BOUND"),
        help="check the reduced constraints against the full family on a grid",
    )
    p.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help=f"float tolerance (default from ${TOLERANCE_ENV} or 1e-9)",
    )
    p.set_defaults(handler=run_region)

    p = sub.add_parser("holonomy", help="holonomy normalizations and residuals")
    p.add_argument("--normalization", action="store_true",
                   help="solve the parabolic lower-left constant")
    p.add_argument("--b-type", dest="b_type", action="store_true",
                   help="modulus forced by commutator parabolicity")
    p.add_argument("--residual", action="store_true",
                   help="trace residual certifying equality of two moduli")
    p.add_argument("--tau", help="first modulus, rational a+bi")
    p.add_argument("--tau-prime", dest="tau_prime", help="second modulus, rational a+bi")
    p.set_defaults(handler=run_holonomy)

    p = sub.add_parser("enumerate", help="boundary-class enumerations")
    p.add_argument("--family", required=True, choices=("whi3", "tet2"))
    p.add_argument("--bound", type=int, default=3, help="search bound for tet2")
    p.set_defaults(handler=run_enumerate)

    p = sub.add_parser("norm", help="Thurston norm against a catalog ball")
    p.add_argument("--ball", required=True, help="catalog manifold id, e.g. M4")
    p.add_argument("--vector", required=True, help="comma-separated rational coordinates")
    p.set_defaults(handler=run_norm)

    p = sub.add_parser("bounds", help="volume and Dehn-filling bounds")
    p.add_argument("--census", help="census like t4=1 or chain3=2,cycle2=1")
    p.add_argument("--vol-mult-voct", dest="vol_mult_voct",
                   help="volume as a rational multiple of the octahedron volume")
    p.add_argument("--vol", type=float, help="volume as a float")
    p.add_argument("--catalog", help="catalog manifold id, e.g. M4 or W3")
    p.add_argument("--n", type=int, help="parameter for W/WPrime catalog ids")
    p.add_argument("--montesinos", type=int, help="chain length n for a tangle slope")
    p.add_argument("--slope", help="tangle slope, rational or inf (default inf)")
    p.add_argument("--convergence", type=int, help="filling parameter for the length report")
    p.add_argument("--core-length", dest="core_length", type=float,
                   help="filling length for the core-geodesic bound")
    p.add_argument("--normalized-length", dest="normalized_length",
                   help="n or n,r for the normalized length lower bound")
    p.set_defaults(handler=run_bounds)

    p = sub.add_parser("plot", help="render SVG figures")
    p.add_argument("--what", required=True, choices=("region", "norm-ball"))
    p.add_argument("--ball", help="catalog manifold id for norm-ball plots")
    p.add_argument("--output", required=True, help="output SVG path")
    p.add_argument("--resolution", type=int, default=400)
    p.set_defaults(handler=run_plot)

    p = sub.add_parser("report", help="write figures and tables to a directory")
    p.add_argument("--output-dir", dest="output_dir", required=True)
    p.set_defaults(handler=run_report)

    p = sub.add_parser("schema-docs", help="print the JSON schemas")
    p.set_defaults(handler=run_schema_docs)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tolerance", "absent") is None:
        try:
            args.tolerance = default_tolerance()
        except ValueError as exc:
            sys.stdout.write(render_result("invalid-input", {"reason": str(exc)}, [str(exc)]))
            return EXIT_INVALID
    try:
        status, payload, citations = args.handler(args)
    except InputError as exc:
        sys.stdout.write(render_result("invalid-input", {"reason": str(exc)}, [str(exc)]))
        return EXIT_INVALID
    if status == "text":
        sys.stdout.write(payload)
        return EXIT_OK
    sys.stdout.write(render_result(status, payload, citations))
    return _STATUS_EXIT[status]


if __name__ == "__main__":
    sys.exit(main())
