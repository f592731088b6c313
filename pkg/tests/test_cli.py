import json
import shutil
import subprocess
import sys

import pytest

from metacover.cli import dump_json, main
from metacover.schemas import validate
from support import CLI_CASES, D6_ARGS, Q8_ARGS, fixture_path


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def _case_id(case):
    argv, code = case
    return "-".join(a.rsplit("/", 1)[-1] for a in argv[:3]) + f"->{code}"


@pytest.mark.parametrize("case", CLI_CASES, ids=_case_id)
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_exit_codes(case, fmt, capsys):
    argv, expected = case
    extra = ["--format", fmt] if argv[0] != "nonsense" else []
    code, out, err = run(argv + extra, capsys)
    assert code == expected, err
    if expected:
        assert err.strip()
    if fmt == "json" and out:
        # one re-emission cycle gives identical bytes
        assert dump_json(json.loads(out)) + "\n" == out


def test_group_info_text(capsys):
    code, out, _ = run(["group", "info", *Q8_ARGS], capsys)
    assert code == 0
    assert "|G| = 8" in out and "ord(τ) = 4" in out and "nonsplit" in out


def test_invalid_message_names_the_condition(capsys):
    code, _, err = run(["group", "info", "--m", "5", "--k", "5", "--t", "2", "--r", "3"], capsys)
    assert code == 1 and "r^t ≢ 1 (mod m)" in err


def test_reps_list(capsys):
    code, out, _ = run(["reps", "list", "--m", "3", "--k", "3", "--t", "2", "--r", "2", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["nu"] == 3 and sorted(ir["dim"] for ir in data["irreps"]) == [1, 1, 2]


def test_decompose_d6(capsys):
    code, out, _ = run(["decompose", *D6_ARGS, "--format", "json"], capsys)
    data = json.loads(out)
    assert (data["full"], data["descends"], data["rank"]) == (2, 2, 12)


@pytest.mark.parametrize(
    "name, factors", [("kummer_y.json", [2]), ("kummer_two.json", [2, 2]), ("kummer_square.json", [])]
)
def test_kummer(name, factors, capsys):
    code, out, _ = run(["kummer", fixture_path(name), "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["invariant_factors"] == factors


def test_completed_data_reparses(capsys, tmp_path):
    for name in ("z4_reduced.json", "bidouble_reduced.json"):
        code, out, _ = run(["abelian", "complete", fixture_path(name), "--format", "json"], capsys)
        assert code == 0
        data = json.loads(out)
        validate(data, "building_data")
        path = tmp_path / name
        path.write_text(out)
        code, _, _ = run(["abelian", "check", str(path)], capsys)
        assert code == 0
        code, again, _ = run(["abelian", "complete", str(path), "--format", "json"], capsys)
        assert again == out


def test_equations_text(capsys):
    code, out, _ = run(["abelian", "equations", fixture_path("double_line.json")], capsys)
    assert code == 0 and out.strip() == "z[1]^2 = s_1"


def test_canonical_json(capsys):
    code, out, _ = run(["abelian", "canonical", fixture_path("z4_reduced.json"), "--format", "json"], capsys)
    data = json.loads(out)
    assert data["K_V_descent"] == [1] and data["totally_ramified"] is True
    code, out, _ = run(["abelian", "canonical", fixture_path("bidouble_reduced.json")], capsys)
    assert code == 0 and "note:" in out


def test_invalid_json_payload(capsys):
    code, out, _ = run(["abelian", "check", fixture_path("double_line_bad.json"), "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 1 and data["valid"] is False and data["violations"][0]["chi"] == [1]


def test_field_verify_json(capsys):
    code, out, _ = run(["field", "verify", fixture_path("tower_d3.json"), "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["u"] == 1 and data["norm_identity"] is True


def test_parse_error_position(capsys):
    code, _, err = run(["field", "verify", fixture_path("tower_parse_error.json")], capsys)
    assert code == 2 and "position 3" in err


@pytest.mark.skipif(shutil.which("metacover") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(
        ["metacover", "group", "info", *Q8_ARGS, "--format", "json"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["order"] == 8


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "metacover.cli", "orbits", "--m", "3", "--r", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "{1,2} size 2" in proc.stdout
