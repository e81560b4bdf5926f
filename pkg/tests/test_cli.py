"""End-to-end CLI checks: output text, JSON schema conformance, exit codes,
and byte determinism."""

from __future__ import annotations

import io
import json
from importlib import resources

import jsonschema
import pytest

from quadsing import cli


def _run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), stdout=out)
    return code, out.getvalue()


def _run_json(*argv):
    code, text = _run(*argv)
    return code, json.loads(text)


def _schema(name):
    ref = resources.files("quadsing.schemas").joinpath(name)
    return json.loads(ref.read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# milnor
# ---------------------------------------------------------------------------


def test_milnor_text_output():
    code, text = _run("milnor", "--vars", "x,y", "x^2 - y^3")
    assert code == 0
    assert "Jacobian ring dimension: 2" in text
    assert "mu^q = ⟨1⟩ + ⟨-1⟩" in text


def test_milnor_ascii_fallback(monkeypatch):
    monkeypatch.setenv("QUADSING_ASCII", "1")
    code, text = _run("milnor", "--vars", "x,y", "x^2 - y^3")
    assert code == 0
    assert "mu^q = <1> + <-1>" in text
    assert "⟨" not in text


def test_milnor_json_output():
    code, doc = _run_json("milnor", "--json", "--vars", "x,y", "x^2 - y^3")
    assert code == 0
    assert doc["dimension"] == 2
    assert doc["gram"] == [[0, -6], [-6, 0]]
    jsonschema.validate(doc["form"], _schema("gw_element.schema.json"))


# ---------------------------------------------------------------------------
# conductor
# ---------------------------------------------------------------------------


def test_conductor_text_report():
    code, text = _run(
        "conductor", "--vars", "x,y", "--weights", "3,2", "--degree", "6",
        "x^2 - y^3",
    )
    assert code == 0
    assert "rank -2" in text
    assert "gw=skipped rank=true" in text


def test_conductor_json_validates():
    code, doc = _run_json(
        "conductor", "--json", "--vars", "x,y", "--degree", "2", "x^2 - y^2"
    )
    assert code == 0
    jsonschema.validate(doc, _schema("conductor_report.schema.json"))
    assert doc["verdicts"] == {"gw": True, "rank": True}


def test_conductor_json_weighted_validates():
    code, doc = _run_json(
        "conductor", "--json", "--vars", "x,y", "--weights", "3,2",
        "--degree", "6", "x^2 - y^3",
    )
    assert code == 0
    jsonschema.validate(doc, _schema("conductor_report.schema.json"))
    assert doc["verdicts"]["gw"] == "skipped"


# ---------------------------------------------------------------------------
# euler / monodromy
# ---------------------------------------------------------------------------


def test_euler_hodge_report():
    code, text = _run("euler", "--degree", "4", "--ambient", "3")
    assert code == 0
    assert "1, 19, 1" in text
    assert "euler characteristic: 24" in text


def test_euler_quadric_report():
    code, text = _run("euler", "--quadric", "3")
    assert code == 0
    assert "rank: 4" in text


def test_euler_requires_ambient():
    out = io.StringIO()
    assert cli.run(["euler", "--degree", "3"], stdout=out) == 2


def test_monodromy_even_is_zero():
    code, text = _run("monodromy", "--quadratic", "--dimension", "2")
    assert code == 0
    assert "variation: zero map" in text
    assert "Hom = 0" in text


def test_monodromy_odd_factors():
    code, text = _run("monodromy", "--quadratic", "--dimension", "3")
    assert code == 0
    assert "scalar -1" in text


def test_monodromy_json_validates():
    for dim in ("2", "3"):
        code, doc = _run_json(
            "monodromy", "--json", "--quadratic", "--dimension", dim
        )
        assert code == 0
        jsonschema.validate(doc, _schema("tate_monodromy.schema.json"))


def test_monodromy_kummer():
    code, text = _run("monodromy", "--kummer")
    assert code == 0
    assert "[0, -1]" in text
    assert "N(-1) o N = 0: true" in text


def test_monodromy_abstract():
    code, text = _run("monodromy", "--abstract", "5", "--dimension", "2")
    assert code == 0
    assert "-1/5" in text


# ---------------------------------------------------------------------------
# gw
# ---------------------------------------------------------------------------


def test_gw_invariants():
    code, text = _run("gw", "invariants", "⟨1,2⟩ - ⟨3⟩")
    assert code == 0
    assert "rank: 1" in text
    assert "discriminant: 6" in text


def test_gw_equal_and_arithmetic():
    code, text = _run("gw", "equal", "⟨1,-1⟩", "⟨2,-2⟩")
    assert code == 0 and "true" in text
    code, text = _run("gw", "mul", "<2>", "<3,5>")
    assert code == 0 and "⟨6⟩ + ⟨10⟩" in text


def test_gw_specialize_and_transfer():
    code, text = _run("gw", "specialize", "<3*t^2>")
    assert code == 0 and "⟨3⟩" in text
    code, text = _run("gw", "transfer", "--min-poly", "x^2+1", "<1>")
    assert code == 0 and "⟨1⟩ + ⟨-1⟩" in text


def test_gw_json_validates():
    code, doc = _run_json("gw", "add", "--json", "<1,2>", "<3>")
    assert code == 0
    jsonschema.validate(doc, _schema("gw_element.schema.json"))
    assert doc["pos"] == [1, 2, 3]


# ---------------------------------------------------------------------------
# batch
# ---------------------------------------------------------------------------


def test_batch_mixed_points(tmp_path):
    f = tmp_path / "points.json"
    f.write_text(
        json.dumps(
            [
                {"vars": ["x", "y"], "poly": "x^2 - y^2", "degree": 2},
                {
                    "residue_field": "x^2+1",
                    "milnor_form": "<1>",
                    "degree": 2,
                    "dimension": 1,
                },
            ]
        )
    )
    code, doc = _run_json("batch", "--json", str(f))
    assert code == 0
    jsonschema.validate(doc, _schema("batch_report.schema.json"))
    assert len(doc["points"]) == 2
    assert doc["total"]["neg"] == [-2, -2, 1]
    assert doc["total"]["pos"] == []


def test_batch_single_odp_sums_to_minus_minus_one(tmp_path):
    from quadsing import gw as gwmod

    f = tmp_path / "one.json"
    f.write_text(json.dumps([{"vars": ["x", "y"], "poly": "x^2 - y^2"}]))
    code, doc = _run_json("batch", "--json", str(f))
    assert code == 0
    total = gwmod.from_json_dict(doc["total"])
    assert gwmod.is_equal(total, -gwmod.diag_form([-1]))


def test_batch_empty_array(tmp_path):
    f = tmp_path / "empty.json"
    f.write_text("[]")
    code, text = _run("batch", str(f))
    assert code == 0
    assert "sum = 0" in text


def test_batch_reports_bad_entry_index(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps([{"vars": ["x", "y"], "poly": "x^2 -"}]))
    out = io.StringIO()
    assert cli.run(["batch", str(f)], stdout=out) == 2
    assert "batch entry 0" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# error handling and exit codes
# ---------------------------------------------------------------------------


def test_non_isolated_is_a_clean_mathematical_failure(capsys):
    out = io.StringIO()
    code = cli.run(["milnor", "--vars", "x,y", "x^2"], stdout=out)
    assert code == 1
    assert "not-isolated" in capsys.readouterr().err


def test_non_isolated_json_error_envelope():
    code, doc = _run_json("milnor", "--json", "--vars", "x,y", "x^2")
    assert code == 1
    assert doc["error"]["code"] == "not-isolated"


def test_parse_error_exits_two(capsys):
    out = io.StringIO()
    code = cli.run(["milnor", "--vars", "x,y", "x^2 -"], stdout=out)
    assert code == 2
    assert "parse-error" in capsys.readouterr().err


def test_unknown_variable_exits_two():
    code, doc = _run_json("milnor", "--json", "--vars", "x,y", "x^2 - z^3")
    assert code == 2
    assert doc["error"]["code"] == "unknown-variable"


def test_unknown_subcommand_exits_two():
    out = io.StringIO()
    assert cli.run(["frobnicate"], stdout=out) == 2


# ---------------------------------------------------------------------------
# determinism
# ---------------------------------------------------------------------------


def test_json_reports_are_byte_identical():
    probes = [
        ("conductor", "--json", "--vars", "x,y", "--degree", "3", "x^3 + y^3"),
        ("milnor", "--json", "--vars", "x,y", "x^2*y + y^4"),
        ("monodromy", "--json", "--quadratic", "--dimension", "4"),
    ]
    for argv in probes:
        _, first = _run(*argv)
        _, second = _run(*argv)
        assert first == second
