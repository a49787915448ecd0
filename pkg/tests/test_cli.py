import json
import subprocess
import sys

import pytest

from koszulmod import builtin_cdga, catalog_keys
from koszulmod.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_OK, SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_model_list_names_every_catalog_entry(capsys):
    code, out, _ = run(capsys, "model", "list")
    assert code == EXIT_OK
    assert all(key in out for key in catalog_keys())


def test_model_show_unknown_key(capsys):
    code, _, err = run(capsys, "model", "show", "nosuch")
    assert code == EXIT_INPUT and "nosuch" in err


def test_sol2_homology(capsys):
    code, data = run_json(capsys, "koszul", "ce:sol2", "-i", "1")
    assert code == EXIT_OK
    assert data["schema"] == SCHEMA and data["command"] == "koszul"
    assert data["annihilator"] == ["x - 1"] and data["graded"] is False


def test_graded_homology_reports_series(capsys):
    code, data = run_json(capsys, "koszul", "bibby:3", "-D", "3")
    assert code == EXIT_OK
    assert data["bound"] == 3 and len(data["dims"]) == 4
    assert data["hilbert_series"]["text"] == "3/(1 - t)^2"


def test_bound_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("KOSZULMOD_DEGREE_BOUND", "4")
    _, data = run_json(capsys, "koszul", "exterior:2", "-i", "0")
    assert data["bound"] == 4 and len(data["dims"]) == 5
    # an explicit flag wins over the environment
    _, data = run_json(capsys, "koszul", "exterior:2", "-i", "0", "-D", "2")
    assert data["bound"] == 2


def test_bad_environment_bound(capsys, monkeypatch):
    monkeypatch.setenv("KOSZULMOD_DEGREE_BOUND", "lots")
    code, _, err = run(capsys, "koszul", "exterior:2")
    assert code == EXIT_INPUT and "KOSZULMOD_DEGREE_BOUND" in err


def test_cap_too_small_exit(capsys):
    code, _, err = run(capsys, "koszul", "exterior:1", "-i", "5")
    assert code == EXIT_CAP and "cap" in err


@pytest.mark.parametrize("argv", [
    ["koszul"],
    ["koszul", "ce:sol2", "-i", "-1"],
    ["chen", "ce:sol2", "-N", "0"],
    ["frobnicate"],
    ["verify"],
    ["verify", "--check", "nosuch"],
    ["aomoto", "ce:sol2", "-p", "1,2"],
    ["aomoto", "ce:sol2", "-p", "one"],
])
def test_bad_input_exits_two(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_INPUT


def test_chen_ranks_of_braid_model(capsys):
    code, data = run_json(capsys, "chen", "os-braid:4", "-N", "4")
    assert code == EXIT_OK
    assert data["theta"] == {"1": 6, "2": 4, "3": 10, "4": 15}


def test_resonance_samples(capsys):
    code, data = run_json(capsys, "resonance", "os-braid:3", "--points", "3")
    assert code == EXIT_OK
    assert data["agree_away_from_origin"] is True
    assert len(data["samples"]) == 3 + 3 + 1


def test_aomoto_points(capsys):
    code, data = run_json(capsys, "aomoto", "ce:sol2", "-p", "1", "-p", "0")
    assert code == EXIT_OK
    assert [p["dim"] for p in data["points"]] == [1, 1]


def test_model_from_json_file(capsys, tmp_path):
    path = tmp_path / "heis.json"
    path.write_text(json.dumps(builtin_cdga("ce:h(1)").to_json()))
    code, data = run_json(capsys, "koszul", str(path), "--cochain", "-i", "2")
    assert code == EXIT_OK and data["side"] == "cochain"


def test_unreadable_json_file(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{")
    assert run(capsys, "koszul", str(path))[0] == EXIT_INPUT


def test_verify_pass_and_fail_exit_codes(capsys):
    assert run(capsys, "verify", "--check", "crowell", "--model", "os-braid:4")[0] == EXIT_OK
    # the Euler identity needs formality; the Heisenberg model is not formal
    assert run(capsys, "verify", "--check", "euler_identity", "--model", "ce:h(1)")[0] == EXIT_FAIL


def test_verify_runs_one_job_per_model(capsys):
    _, data = run_json(capsys, "verify", "--check", "bpres_oracle", "--model", "bibby:2", "--model", "ce:sol2")
    assert [r["model"] for r in data["reports"]] == ["bibby:2", "ce:sol2"]
    assert all("seconds" not in r for r in data["reports"])


def test_json_output_is_byte_identical_across_runs():
    cmd = [sys.executable, "-m", "koszulmod", "resonance", "bibby:2", "--format", "json", "--points", "4"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["schema"] == SCHEMA
