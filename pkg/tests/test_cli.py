import json

import pytest

from catenoid_vortex import cli
from catenoid_vortex.scenarios import catalogue, save_config


def test_write_scenarios_and_run(tmp_path, capsys):
    assert cli.main(["write-scenarios", str(tmp_path / "cfg")]) == cli.EXIT_OK
    assert len(list((tmp_path / "cfg").glob("*.json"))) == 8
    capsys.readouterr()
    assert cli.main(["run", str(tmp_path / "cfg" / "fig2-neck.json"), "--out", str(tmp_path / "out")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("fig2-neck: completed") and "critical" in out
    assert (tmp_path / "out" / "fig2-neck.csv").is_file()


def test_run_all(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.mkdir()
    save_config(catalogue.neck(t_final=0.5), cfg / "a.json")
    save_config(catalogue.meridional(t_final=0.5), cfg / "b.json")
    assert cli.main(["run-all", str(cfg), "--out", str(tmp_path / "out"), "--jobs", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split(":")[0] for line in lines] == ["fig2-neck", "fig1-meridional"]


def test_run_all_reports_worst_code(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.mkdir()
    save_config(catalogue.neck(t_final=0.5), cfg / "a.json")
    (cfg / "b.json").write_text("{}")
    assert cli.main(["run-all", str(cfg), "--out", str(tmp_path / "out")]) == cli.EXIT_CONFIG
    assert cli.main(["run-all", str(tmp_path / "missing")]) == cli.EXIT_CONFIG
    assert cli.main(["run-all", str(tmp_path / "out")]) == cli.EXIT_CONFIG


def test_run_config_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert cli.main(["run", str(path)]) == cli.EXIT_CONFIG
    assert "config error" in capsys.readouterr().out


def test_run_integration_failure(tmp_path, capsys):
    doc = json.loads(catalogue.neck().to_json())
    doc["integrator"]["max_steps"] = 3
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(doc))
    assert cli.main(["run", str(path), "--out", str(tmp_path)]) == cli.EXIT_INTEGRATION
    assert "integration failed" in capsys.readouterr().out


def test_verify_subset(capsys):
    assert cli.main(["verify", "9"]) == cli.EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("PASS [9]")
    assert out[-1] == "1/1 checks passed"


def test_verify_failure_code(monkeypatch, capsys):
    from catenoid_vortex import acceptance

    failing = acceptance.CriterionResult(9, "forced", False, 1.0, 0.0)
    monkeypatch.setitem(acceptance.CRITERIA, 9, lambda: [failing])
    assert cli.main(["verify", "9"]) == cli.EXIT_FAILED_CHECKS
    assert capsys.readouterr().out.startswith("FAIL [9] forced")


def test_geodesic_table(capsys):
    assert cli.main(["geodesic-table", "0.5", "1.0", "--n", "5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("# lambda=0.5 a=1 regime=subcritical")
    assert lines[1] == "v,u"
    rows = [tuple(map(float, line.split(","))) for line in lines[2:]]
    assert len(rows) == 5 and rows[2] == (0.0, 0.0)
    assert rows[0][1] == pytest.approx(-rows[4][1], rel=1e-14)


def test_geodesic_table_supercritical_starts_at_turn(capsys):
    assert cli.main(["geodesic-table", "1.5", "1.0", "--n", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "v_turn=" in lines[0]
    assert float(lines[2].split(",")[1]) == 0.0


@pytest.mark.parametrize("args", [["1.0", "1.0"], ["0.0", "1.0"], ["0.5", "-1.0"]])
def test_geodesic_table_rejects(args, capsys):
    assert cli.main(["geodesic-table", *args]) == cli.EXIT_CONFIG
    assert capsys.readouterr().err.startswith("error:")


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "catenoid_vortex", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "geodesic-table" in proc.stdout
