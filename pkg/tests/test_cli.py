"""End-to-end checks of the command-line surface.

Runs the entry point in-process and asserts on the full JSON envelope,
the exit codes, and the determinism of the printed bytes.
"""

import json
import os
import shutil
import subprocess
import sys

import pytest

from pantsunion import cli
from pantsunion.pants import PantsConfig, UnionType, canonical_config


def run_cli(argv, capsys):
    rc = cli.main(argv)
    out = capsys.readouterr().out
    return rc, out


def run_json(argv, capsys):
    rc, out = run_cli(argv, capsys)
    return rc, json.loads(out)


def write_config(tmp_path, union_type, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(canonical_config(union_type).to_dict()))
    return str(path)


# -- documented examples -------------------------------------------------------


def test_classify_chain_example(tmp_path, capsys):
    path = write_config(tmp_path, UnionType("A", 3))
    rc, doc = run_json(["classify", "--input", path], capsys)
    assert rc == 0
    assert doc["status"] == "ok"
    assert doc["payload"] == {"ambient": "general", "n": 3, "type": "A"}
    assert doc["citations"] == []


def test_region_tau_flag(capsys):
    rc, doc = run_json(["region", "--tau", "2i"], capsys)
    assert rc == 0
    assert doc["payload"]["membership"] == "inside"
    assert doc["payload"]["violated"] == []


def test_census_bound_flags(capsys):
    rc, doc = run_json(
        ["bounds", "--census", "t4=1", "--vol-mult-voct", "3"], capsys
    )
    assert rc == 0
    assert doc["payload"]["k"] == 4
    assert doc["payload"]["ok"] is True
    assert doc["payload"]["disjoint_lb"] == 3
    assert doc["payload"]["bound"] == pytest.approx(12.0)


# -- determinism and exit codes --------------------------------------------------


def test_repeated_runs_are_byte_identical(tmp_path, capsys):
    path = write_config(tmp_path, UnionType("Tet8"))
    first = run_cli(["classify", "--input", path], capsys)
    second = run_cli(["classify", "--input", path], capsys)
    assert first == second
    third = run_cli(["region", "--extremal"], capsys)
    fourth = run_cli(["region", "--extremal"], capsys)
    assert third == fourth


def test_exit_code_three_for_impossible(tmp_path, capsys):
    data = canonical_config(UnionType("A", 2)).to_dict()
    data["geodesics"][0]["sides"] = ["S", "S"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    rc, doc = run_json(["classify", "--input", str(path)], capsys)
    assert rc == 3
    assert doc["status"] == "impossible"
    assert doc["citations"]
    assert doc["citations"][0].startswith("rule:")


def test_exit_code_three_for_ambiguous(tmp_path, capsys):
    data = canonical_config(UnionType("WhiHat", 4)).to_dict()
    data.pop("framing", None)
    path = tmp_path / "cycle.json"
    path.write_text(json.dumps(data))
    rc, doc = run_json(["classify", "--input", str(path)], capsys)
    assert rc == 3
    assert doc["status"] == "ambiguous"
    kinds = {c["type"] for c in doc["payload"]["candidates"]}
    assert kinds == {"WhiHat", "WhiPrimeHat"}


def test_malformed_json_reports_position(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", _Stdin('{"schema": 1,,}'))
    rc, doc = run_json(["classify", "--input", "-"], capsys)
    assert rc == 2
    assert doc["status"] == "invalid-input"
    assert "line 1 column" in doc["payload"]["reason"]


class _Stdin:
    def __init__(self, text):
        self._text = text

    def read(self):
        return self._text


def test_missing_file_is_invalid_input(capsys):
    rc, doc = run_json(["classify", "--input", "/no/such/file.json"], capsys)
    assert rc == 2
    assert doc["status"] == "invalid-input"


def test_module_errors_surface_verbatim(capsys):
    # below the filling-length threshold, so the library itself objects
    rc, doc = run_json(["bounds", "--core-length", "1.0"], capsys)
    assert rc == 2
    assert "threshold" in doc["payload"]["reason"]


# -- every canonical configuration round-trips through the CLI --------------------


def all_types():
    types = []
    for n in range(1, 9):
        types.append(UnionType("A", n))
    for n in range(2, 9, 2):
        types.append(UnionType("B", n))
    for n in (4, 6, 8):
        types.append(UnionType("Whi", n))
    types.append(UnionType("WhiPrime", 8))
    for n in range(2, 9):
        types.append(UnionType("WhiHat", n))
    for n in range(2, 9, 2):
        types.append(UnionType("WhiPrimeHat", n))
    for kind in ("T3", "T4", "Bor6", "Mag4", "Tet8", "Pen10", "Oct8",
                 "TetHat2", "PenHat4", "OctHat4", "BInf", "WhiInf"):
        types.append(UnionType(kind))
    return types


def test_all_canonical_configs_classify_to_themselves(tmp_path, capsys):
    for t in all_types():
        path = write_config(tmp_path, t, name=f"{t.name()}.json")
        rc, doc = run_json(["classify", "--input", path], capsys)
        assert rc == 0, (t.name(), doc)
        assert doc["payload"]["type"] == t.kind
        assert doc["payload"]["n"] == t.count


# -- complex value parsing ---------------------------------------------------------


def test_flag_complex_forms(capsys):
    for text in ("2i", "1+i", "3/2+1/4i", "0+2i", "1/2+3i"):
        rc, doc = run_json(["region", f"--tau={text}"], capsys)
        assert rc == 0, text
    # parses (leading-minus needs the --flag=value spelling), then the
    # library rejects the non-positive imaginary part verbatim
    rc, doc = run_json(["region", "--tau=-i"], capsys)
    assert rc == 2
    assert "imaginary part" in doc["payload"]["reason"]
    rc, doc = run_json(["region", "--tau", "2+j"], capsys)
    assert rc == 2
    assert "cannot parse" in doc["payload"]["reason"]


def test_json_quadratic_tau_lands_on_boundary(tmp_path, capsys):
    path = tmp_path / "tau.json"
    path.write_text(json.dumps({"tau": {"a": "93/128", "b": "1/128", "d": 55}}))
    rc, doc = run_json(["region", "--input", str(path)], capsys)
    assert rc == 0
    assert doc["payload"]["membership"] == "boundary"
    assert doc["payload"]["equalities"]


def test_region_requires_exactly_one_mode(capsys):
    rc, doc = run_json(["region"], capsys)
    assert rc == 2
    rc, doc = run_json(["region", "--tau", "2i", "--arcs"], capsys)
    assert rc == 2


def test_tolerance_env_var(capsys, monkeypatch):
    monkeypatch.setenv(cli.TOLERANCE_ENV, "not-a-float")
    rc, doc = run_json(["region", "--tau", "2i"], capsys)
    assert rc == 2
    monkeypatch.setenv(cli.TOLERANCE_ENV, "1e-6")
    rc, doc = run_json(["region", "--tau", "2i"], capsys)
    assert rc == 0
    assert doc["payload"]["membership"] == "inside"


def test_bad_census_string_rejected_with_message(capsys):
    rc, doc = run_json(
        ["bounds", "--census", "pants=3", "--vol-mult-voct", "1"], capsys
    )
    assert rc == 2
    assert "census entry" in doc["payload"]["reason"]


# -- remaining subcommands ----------------------------------------------------------


def test_holonomy_residual_certificate(capsys):
    rc, doc = run_json(
        ["holonomy", "--residual", "--tau", "2i", "--tau-prime", "2i"], capsys
    )
    assert rc == 0
    assert doc["payload"]["moduli_equal_certified"] is True
    rc, doc = run_json(
        ["holonomy", "--residual", "--tau", "2i", "--tau-prime", "3i"], capsys
    )
    assert doc["payload"]["moduli_equal_certified"] is False


def test_holonomy_b_type(capsys):
    rc, doc = run_json(["holonomy", "--b-type"], capsys)
    assert rc == 0
    assert doc["payload"]["tau"] == "(0) + (2)i"
    assert doc["payload"]["commutator_trace"] == "(-2) + (0)i"


def test_enumerate_families(capsys):
    rc, doc = run_json(["enumerate", "--family", "whi3"], capsys)
    assert rc == 0
    assert len(doc["payload"]["solutions"]) == 6
    rc, doc = run_json(["enumerate", "--family", "tet2", "--bound", "3"], capsys)
    assert rc == 0
    assert [0, 0, 1, 0] in doc["payload"]["zero_case"]


def test_norm_subcommand(capsys):
    rc, doc = run_json(["norm", "--ball", "WPrime2", "--vector", "1,1,1"], capsys)
    assert rc == 0
    assert doc["payload"]["norm"] == "3"
    rc, doc = run_json(["norm", "--ball", "M4", "--vector", "1,1"], capsys)
    assert rc == 2


def test_montesinos_subcommand(capsys):
    rc, doc = run_json(["bounds", "--montesinos", "2"], capsys)
    assert rc == 0
    assert doc["payload"]["hyperbolic"] is False
    rc, doc = run_json(["bounds", "--montesinos", "3", "--slope", "4/3"], capsys)
    assert doc["payload"]["hyperbolic"] is True


def test_schema_docs_cover_the_wire_format(capsys):
    rc, out = run_cli(["schema-docs"], capsys)
    assert rc == 0
    assert '"schema": 1' in out
    assert '"N" | "S"' in out
    assert "non-separating" in out and "separating" in out
    assert "a+bi" in out


# -- figures and tables ----------------------------------------------------------------


def test_plot_region_svg(tmp_path, capsys):
    target = tmp_path / "region.svg"
    rc, doc = run_json(["plot", "--what", "region", "--output", str(target)], capsys)
    assert rc == 0
    text = target.read_text()
    assert text.startswith("<svg") or text.startswith("<?xml")
    leftovers = [n for n in os.listdir(tmp_path) if n.endswith(".tmp")]
    assert leftovers == []


def test_plot_norm_ball_svg(tmp_path, capsys):
    target = tmp_path / "m4.svg"
    rc, doc = run_json(
        ["plot", "--what", "norm-ball", "--ball", "M4", "--output", str(target)],
        capsys,
    )
    assert rc == 0
    text = target.read_text()
    assert "<polygon" in text
    rc, doc = run_json(
        ["plot", "--what", "norm-ball", "--output", str(tmp_path / "x.svg")], capsys
    )
    assert rc == 2


def test_report_writes_every_artifact(tmp_path, capsys):
    outdir = tmp_path / "rep"
    rc, doc = run_json(["report", "--output-dir", str(outdir)], capsys)
    assert rc == 0
    names = sorted(os.listdir(outdir))
    assert names == doc["payload"]["written"]
    assert "region.svg" in names and "region.png" in names
    assert "volumes.csv" in names and "census.csv" in names and "arcs.csv" in names
    for name in names:
        assert (outdir / name).stat().st_size > 0
    census_rows = (outdir / "census.csv").read_text().splitlines()
    equal_rows = [r for r in census_rows[1:] if r.endswith("True")]
    assert len(equal_rows) == 1 and equal_rows[0].startswith("M4,")
    arc_rows = (outdir / "arcs.csv").read_text().splitlines()
    assert len(arc_rows) == 1 + 26


def test_console_script_is_installed():
    exe = shutil.which("pantsunion")
    if exe is None:
        pytest.skip("entry point not on PATH")
    proc = subprocess.run(
        [exe, "region", "--tau", "2i"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["membership"] == "inside"
