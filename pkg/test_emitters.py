"""
Pruebas de CSV, JSON, SVG y de la línea de comandos
"""
import csv
import io
import json
from fractions import Fraction
from unittest.mock import patch

import matplotlib
import pytest

from cli import cli_main, parse_complex
from conditioning import ConditionCurve
from emitters import OutputFormat, RenderSpec, emit_csv, emit_json, emit_svg, write_report
from errors import ArgumentError, OutputError
from scenarios import ScenarioReport, pseudozero_scenario, wilkinson_first


def test_empty_report_is_header_only():
    assert emit_csv(ScenarioReport("vacio")) == "series,x,log10_value\n"


def test_single_curve_rows_ascending():
    curve = ConditionCurve((0, Fraction(1, 2), 1), (0.0, 0.5, float("-inf")), "b")
    text = emit_csv(ScenarioReport("uno", curves=[curve]))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["series", "x", "log10_value"]
    assert [r[1] for r in rows[1:]] == ["0", "0.5", "1"]
    assert rows[3][2] == "-inf"


def test_csv_round_trip_recovers_summary():
    report = wilkinson_first(8, samples=41)
    rows = list(csv.DictReader(io.StringIO(emit_csv(report))))
    values = [float(r["log10_value"]) for r in rows if r["series"] == "B(x)"]
    assert max(values) == report.summary["max_log10_B"]
    a_values = [float(r["log10_value"]) for r in rows if r["series"] == "A(r)"]
    assert max(a_values) == report.summary["max_log10_A"]
    # Volver a emitir lo leído no cambia ningún campo numérico
    for r in rows:
        assert format(float(r["log10_value"]), ".17g") == r["log10_value"]


def test_csv_contour_block():
    report = pseudozero_scenario("c5", resolution=(24, 24))
    text = emit_csv(report)
    assert "series,level,vertex_index,re,im" in text


def test_json_schema_and_determinism():
    report = wilkinson_first(8, samples=21)
    first = emit_json(report)
    data = json.loads(first)
    assert data["polycond_schema"] == 1
    assert data["summary"]["argmax_root"] == 6
    assert [c["label"] for c in data["curves"]] == ["B(x)", "A(r)", "B(r)/|p'(r)|"]
    assert emit_json(wilkinson_first(8, samples=21)) == first


def test_json_maps_minus_infinity_to_null():
    curve = ConditionCurve((0, 1), (float("-inf"), 0.0), "z")
    data = json.loads(emit_json(ScenarioReport("z", curves=[curve])))
    assert data["curves"][0]["log10_value"] == [None, 0.0]


def test_svg_is_deterministic():
    report = wilkinson_first(6, samples=21)
    spec = RenderSpec(format=OutputFormat.SVG)
    first = emit_svg(report, spec)
    assert first.lstrip().startswith("<?xml") and "<svg" in first
    assert emit_svg(report, spec) == first
    assert matplotlib.rcParams["svg.hashsalt"] is None
    with pytest.raises(ArgumentError):
        RenderSpec(width=0)


def test_svg_with_field_panel():
    report = pseudozero_scenario("c5", resolution=(24, 24))
    text = emit_svg(report, RenderSpec(format=OutputFormat.SVG))
    assert "c5" in text


def test_write_report(tmp_path):
    report = wilkinson_first(6, samples=11)
    path = write_report(report, RenderSpec(format=OutputFormat.JSON, out=tmp_path / "w6.json"))
    assert json.loads(path.read_text(encoding="utf-8"))["name"] == "wilkinson"
    with pytest.raises(OutputError):
        write_report(report, RenderSpec(out=tmp_path))


def test_parse_complex():
    assert parse_complex("3-1.5i") == (3, Fraction(-3, 2))
    assert parse_complex("-2i") == (0, -2)
    assert parse_complex("2") == (2, 0)


def test_cli_wilkinson_json(tmp_path):
    out = tmp_path / "w20.json"
    with patch("cli.record_run") as record:
        code = cli_main(["wilkinson", "--n", "20", "--samples", "21", "--format", "json", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["summary"]["argmax_root"] == 15
    assert data["summary"]["argmax_root_single_coefficient"] == 16
    record.assert_called_once()
    assert record.call_args.args[0] == "wilkinson"


def test_cli_runge_cheb_csv(tmp_path):
    out = tmp_path / "cheb.csv"
    assert cli_main(["runge-cheb", "--degrees", "5", "--samples", "101", "--out", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text(encoding="utf-8"))))
    assert max(float(r["log10_value"]) for r in rows) <= 0.3980


def test_cli_exit_codes(capsys):
    assert cli_main(["nope"]) == 2
    assert cli_main(["wilkinson", "--bogus"]) == 2
    assert cli_main(["wilkinson", "--precision", "1"]) == 2
    code = cli_main(["pseudozeros", "--poly", "c5", "--levels", "1e-70", "--precision", "40", "--grid", "16x16"])
    assert code == 3
    assert "--precision" in capsys.readouterr().err


def test_cli_seed_drives_condition_draws(tmp_path):
    def run(seed, name):
        out = tmp_path / name
        argv = ["condition", "--poly", "c5", "--x", "1/3", "--draws", "50", "--seed", str(seed),
                "--format", "json", "--out", str(out)]
        assert cli_main(argv) == 0
        return json.loads(out.read_text(encoding="utf-8"))

    first, again, other = run(7, "a.json"), run(7, "b.json"), run(8, "c.json")
    assert first == again
    assert first["summary"]["bound_holds"] is True
    assert first["parameters"]["seed"] == 7
    assert other["summary"]["max_perturbation_ratio"] != first["summary"]["max_perturbation_ratio"]
