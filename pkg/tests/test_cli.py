import json
from pathlib import Path

import numpy as np
import pytest

from cosserat_plate.cli import run
from cosserat_plate import verification
from cosserat_plate.io_utils import config_hash


@pytest.fixture
def material_file(tmp_path):
    path = tmp_path / "mat.json"
    path.write_text(json.dumps({
        "lambda": 1.0, "mu": 1.0, "alpha": 1.0, "beta": 1.0,
        "gamma": 1.0, "epsilon": 1.0, "rho": 1.0, "J": [1.0, 1.0, 1.0],
    }))
    return str(path)


@pytest.fixture
def config_file(tmp_path, material_file):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({
        "material": material_file,
        "geometry": {"a": 1.0, "b": 1.0, "h": 1.0},
        "grid": {"nx": 7, "ny": 7},
        "bc": {e: "clamped" for e in ("left", "right", "bottom", "top")},
        "loads": {"p": {"preset": "constant", "amplitude": 1.0}},
        "time": {"t_final": 0.2, "snapshot_every": 100},
    }))
    return str(path)


def test_validate_admissible_exits_zero(config_file, capsys):
    assert run(["validate", "--config", config_file]) == 0
    assert "admissible" in capsys.readouterr().out


def test_validate_inadmissible_exits_two(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({
        "material": {"lambda": 1, "mu": 1, "alpha": 0, "beta": 1,
                     "gamma": 1, "epsilon": 1, "rho": 1, "J": [1, 1, 1]},
    }))
    assert run(["validate", "--config", str(cfg)]) == 2
    assert "alpha>0" in capsys.readouterr().out


def test_missing_config_is_config_error(tmp_path):
    assert run(["validate", "--config", str(tmp_path / "nope.json")]) == 2


def test_constants_prints_examples(config_file, capsys):
    assert run(["constants", "--config", config_file]) == 0
    out = capsys.readouterr().out
    assert "nu       = 0.25" in out
    assert "D        = 0.2222222222" in out


def test_static_outputs(config_file, tmp_path):
    out = tmp_path / "static"
    assert run(["static", "--config", config_file, "--out", str(out)]) == 0
    snap = (out / "static_snapshot.csv").read_text().splitlines()
    assert snap[0].startswith("# cosserat-plate v")
    assert snap[1] == "x1,x2,psi1,psi2,w,omega3,omega1_0,omega2_0,u1,u2,omega3_0"
    assert len(snap) == 2 + 7 * 7
    summary = json.loads((out / "static_summary.json").read_text())
    assert "config_sha256" in summary and "center_w" in summary


def test_simulate_deterministic(config_file, tmp_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert run(["simulate", "--config", config_file, "--out", str(out1)]) == 0
    assert run(["simulate", "--config", config_file, "--out", str(out2)]) == 0
    for name in ("energy_log.csv", "run_summary.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    log = (out1 / "energy_log.csv").read_text().splitlines()
    assert log[1] == "t,kinetic,strain,external_work,total"


def test_dispersion_output(config_file, tmp_path):
    out = tmp_path / "disp"
    assert run(["dispersion", "--config", config_file, "--out", str(out)]) == 0
    lines = (out / "dispersion.csv").read_text().splitlines()
    assert lines[1] == "direction,xi_mag,branch,omega,subsystem"
    assert any(",flexural" in ln for ln in lines[2:])
    assert any(",extensional" in ln for ln in lines[2:])
    summary = json.loads((out / "dispersion_summary.json").read_text())
    assert len(summary["flexural_cutoffs"]) == 6


def test_sweep_output(config_file, tmp_path):
    out = tmp_path / "sweep"
    assert run(["sweep", "--config", config_file, "--out", str(out)]) == 0
    lines = (out / "sweep.csv").read_text().splitlines()
    assert lines[1].startswith("N,l_t,l_b,Psi,quantity")
    assert len(lines) > 10


def test_paper_literal_flag_changes_solution(config_file, tmp_path):
    out1, out2 = tmp_path / "d", tmp_path / "lit"
    assert run(["static", "--config", config_file, "--out", str(out1)]) == 0
    assert run(["static", "--config", config_file, "--out", str(out2),
                "--paper-literal-operators"]) == 0
    a = (out1 / "static_snapshot.csv").read_bytes()
    b = (out2 / "static_snapshot.csv").read_bytes()
    assert a != b


def test_paper_literal_dispersion_fails_cleanly(config_file, tmp_path, capsys):
    """The literal table is non-conservative (non-Hermitian wave matrix), so
    dispersion in literal mode is a reported runtime failure, not a crash."""
    rc = run(["dispersion", "--config", config_file,
              "--out", str(tmp_path / "lit"), "--paper-literal-operators"])
    assert rc == 1
    assert "solver failure" in capsys.readouterr().err


def test_verify_exit_codes(tmp_path, monkeypatch):
    from cosserat_plate.verification import SuiteResult

    calls = {}

    def fake_run_all(seed=0, out_dir=None, verbose=True):
        calls["seed"] = seed
        verification.write_diff_table(Path(out_dir) / "coefficient_diff.csv")
        return [SuiteResult("a", True, "ok")]

    monkeypatch.setattr(verification, "run_all", fake_run_all)
    out = tmp_path / "v"
    assert run(["verify", "--out", str(out), "--seed", "7"]) == 0
    assert calls["seed"] == 7
    assert (out / "coefficient_diff.csv").exists()

    def fake_fail(seed=0, out_dir=None, verbose=True):
        return [SuiteResult("a", False, "boom")]

    monkeypatch.setattr(verification, "run_all", fake_fail)
    assert run(["verify", "--out", str(out)]) == 1


def test_diff_table_csv(tmp_path):
    path = tmp_path / "diff.csv"
    verification.write_diff_table(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "entry,paper_value_expr,paper_value,oracle_value,abs_diff"
    assert any(ln.startswith("k1,") for ln in lines)


def test_config_hash_stable():
    h1 = config_hash({"b": 1, "a": 2})
    h2 = config_hash({"a": 2, "b": 1})
    assert h1 == h2 and len(h1) == 16
