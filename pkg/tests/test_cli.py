import io
import json
import os
from pathlib import Path

import pytest

from quadwalks.cli import run

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "enumerate_ne": ["enumerate", "--steps", "NE", "--order", "3"],
    "divide_sw": ["divide", "--steps", "SW", "--order", "3"],
    "verify_sw": ["verify", "--steps", "SW", "--order", "10"],
    "verify_figure1": ["verify", "--steps", "figure1", "--order", "8"],
    "group_kreweras": ["group", "--steps", "W,S,NE", "--bound", "50"],
    "group_model1": ["group", "--steps", "E,N,NE,SW", "--bound", "100", "--seed", "4"],
    "bishop_model2": ["bishop", "--steps", "W,S,NE,SW", "--order", "5"],
    "symmetry_ne": ["symmetry", "--steps", "N,E"],
    "figure1": ["figure1"],
    "certify_model2": ["certify", "--steps", "W,S,NE,SW", "--order", "6"],
    "guess_geometric": ["guess", "--steps", "NE", "--section", "x=y=1", "--order", "12"],
    "classify": ["classify", "--bound", "200"],
}


def invoke(argv):
    buf = io.StringIO()
    code = run(argv, stdout=buf)
    return code, buf.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_json(name):
    code, out = invoke(CASES[name] + ["--format", "json"])
    assert code == 0
    path = GOLDEN / f"{name}.json"
    if os.environ.get("QUADWALKS_UPDATE_GOLDEN"):
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")


@pytest.mark.parametrize("name", ["verify_sw", "figure1", "group_kreweras", "guess_geometric"])
def test_text_mode_runs(name):
    code, out = invoke(CASES[name])
    assert code == 0 and out.strip()


def test_verify_json_fields():
    code, out = invoke(["verify", "--steps", "SW", "--order", "10", "--format", "json"])
    data = json.loads(out)
    assert code == 0
    assert data["l_matches_oracle"] and data["r_matches_boundary"] and data["identity_holds"]


def test_figure1_json():
    code, out = invoke(["figure1", "--format", "json"])
    data = json.loads(out)
    assert data["count"] == 7
    assert "E,N,NE,SW" not in data["models"]  # serialized in canonical token order
    assert data["models"][0] == "N,NE,E,SW"


def test_certify_order16_exit_zero():
    code, out = invoke(["certify", "--steps", "W,S,NE,SW", "--order", "16", "--format", "json"])
    data = json.loads(out)
    assert code == 0
    assert all(data[k] for k in ("identity_holds", "r_symmetric", "r_nonnegative", "h_real_rational"))


def test_unknown_token_is_usage_error(capsys):
    code, _ = invoke(["verify", "--steps", "N,XX"])
    assert code == 2
    assert "'XX'" in capsys.readouterr().err


def test_bad_flag_is_usage_error():
    assert invoke(["verify", "--order", "ten", "--steps", "N"])[0] == 2
    assert invoke(["frobnicate"])[0] == 2
    assert invoke(["verify"])[0] == 2


def test_hypothesis_violation_is_usage_error():
    assert invoke(["certify", "--steps", "N,E"])[0] == 2
    assert invoke(["bishop", "--steps", "N,S,E,W"])[0] == 2


def test_underdetermined_guess_is_usage_error():
    assert invoke(["guess", "--steps", "W,S,NE", "--order", "5"])[0] == 2


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    code, out = invoke(["enumerate", "--steps", "NE", "--order", "2", "--format", "json",
                        "--output", str(target)])
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["order"] == 2 and len(data["terms"]) == 3


def test_big_numbers_are_strings():
    code, out = invoke(["enumerate", "--steps", "N,S,E,W,NE,SW,NW,SE", "--order", "25", "--format", "json"])
    data = json.loads(out)
    assert all(isinstance(t["num"], str) for t in data["terms"])
    assert max(int(t["num"]) for t in data["terms"]) > 2**64


def test_parallel_output_identical():
    a = invoke(["verify", "--steps", "all", "--order", "5", "--format", "json"])
    b = invoke(["verify", "--steps", "all", "--order", "5", "--format", "json", "--jobs", "3"])
    assert a == b
    assert a[0] == 0 and len(json.loads(a[1])) == 255


def test_guess_none_is_labelled_evidence():
    code, out = invoke(["guess", "--steps", "E,N,NE,SW", "--section", "x=0", "--order", "40",
                        "--kind", "ode", "--max-ode-order", "2", "--max-degree", "4"])
    assert code == 0
    assert "evidence only" in out
