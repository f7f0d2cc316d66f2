import csv
import json

import pytest

from spectra.cli import main
from spectra.scenarios import build_scenario, save_scenario, scenario_to_dict


def _run(tmp_path, *args):
    return main(["run", "--out", str(tmp_path), *args])


def test_run_writes_artifacts(tmp_path, capsys):
    assert _run(tmp_path, "--scenario", "increment_demo", "--inc", "10") == 0
    for name in ("outcome.json", "metrics.json", "summary.csv", "trace.txt"):
        assert (tmp_path / name).exists()
    rows = list(csv.DictReader((tmp_path / "summary.csv").open()))
    assert rows[0]["price"] == "150" and rows[0]["raise_rounds"] == "5"
    metrics = json.loads((tmp_path / "metrics.json").read_text())
    assert metrics["seed"] == 7
    assert "tie on L" in (tmp_path / "trace.txt").read_text()


def test_run_twice_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["run", "--scenario", "claim1_collusion", "--seed", "3", "--out", str(out)]) == 0
    assert (a / "outcome.json").read_bytes() == (b / "outcome.json").read_bytes()
    assert (a / "trace.txt").read_bytes() == (b / "trace.txt").read_bytes()


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("SPECTRA_SEED", "42")
    assert _run(tmp_path, "--scenario", "vickrey_gap") == 0
    assert json.loads((tmp_path / "outcome.json").read_text())["outcome"]["seed"] == 42


def test_hamr_trace_shows_sf(tmp_path):
    assert _run(tmp_path, "--scenario", "claim1_collusion", "--tsf", "3") == 0
    assert "SF 3/3" in (tmp_path / "trace.txt").read_text()


def test_run_from_file(tmp_path):
    path = tmp_path / "s.json"
    save_scenario(build_scenario("vickrey_gap"), path)
    assert _run(tmp_path / "o", "--scenario", str(path), "--mechanism", "FPSB") == 0


def test_unknown_scenario_exit_3(tmp_path, capsys):
    assert _run(tmp_path, "--scenario", "nope") == 3
    assert "unknown scenario" in capsys.readouterr().err


def test_bad_file_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": 1, "name": "x", "licenses": [], "bidders": []}')
    assert _run(tmp_path, "--scenario", str(bad)) == 3
    assert "licenses" in capsys.readouterr().err


def test_usage_errors_exit_2(tmp_path):
    assert main(["run"]) == 2
    assert _run(tmp_path, "--scenario", "increment_demo", "--inc", "-1") == 2
    assert _run(tmp_path, "--scenario", "increment_demo", "--credit", "0.1") == 2
    assert _run(tmp_path, "--scenario", "increment_demo", "--format", "xml") == 2
    assert main(["compare", "--scenario", "vickrey_gap", "--mechanism", ""]) == 2
    assert main(["sweep", "--scenario", "increment_demo", "--axis", "increment", "--values", ""]) == 2
    assert main(["sweep", "--scenario", "increment_demo", "--axis", "colour", "--values", "1"]) == 2


def test_engine_error_exit_4(tmp_path):
    path = tmp_path / "s.json"
    doc = scenario_to_dict(build_scenario("increment_demo"))
    doc["mechanism"]["max_rounds"] = 3
    path.write_text(json.dumps(doc))
    assert _run(tmp_path / "o", "--scenario", str(path)) == 4


def test_compare_claim1(capsys):
    assert main(["compare", "--scenario", "claim1_collusion", "--mechanism", "SAMR,HAMR"]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert [(r["mechanism"], r["verdict"]) for r in rows] == [("SAMR", "SUSTAINABLE"), ("HAMR", "BREAKS")]


def test_compare_vickrey_gap(capsys):
    assert main(["compare", "--scenario", "vickrey_gap", "--mechanism", "FPSB", "--mechanism", "VICKREY"]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert [r["revenue"] for r in rows] == ["20", "15"]
    assert rows[0]["winners"] == rows[1]["winners"].replace("15", "20")


def test_sweep_increment_halving(capsys):
    assert main(["sweep", "--scenario", "increment_demo", "--axis", "increment", "--values", "1,2,4,8"]) == 0
    rounds = [int(r["rounds"]) for r in csv.DictReader(capsys.readouterr().out.splitlines())]
    for a, b in zip(rounds, rounds[1:]):
        assert 1.6 <= a / b <= 2.4


def test_sweep_tsf_claim1_breaks(capsys, tmp_path):
    assert main(["sweep", "--scenario", "claim1_collusion", "--axis", "tsf", "--values", "1:5",
                 "--out", str(tmp_path)]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert [r["value"] for r in rows] == ["1", "2", "3", "4", "5"]
    assert {r["verdict"] for r in rows} == {"BREAKS"}
    assert (tmp_path / "sweep_tsf.csv").exists()


def test_sweep_credit_and_activity(capsys):
    assert main(["sweep", "--scenario", "five_license_entrant", "--axis", "credit_fraction",
                 "--values", "0,0.25"]) == 0
    assert main(["sweep", "--scenario", "five_license_entrant", "--axis", "activity_fraction",
                 "--values", "0.5,1"]) == 0


def test_list(capsys):
    assert main(["list"]) == 0
    assert "claim1_collusion" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [["--help"], ["run", "--help"]])
def test_help_exit_0(argv):
    assert main(argv) == 0
