import json
import math

import numpy as np
import pytest

from rotgauss import read_curve_csv, read_obj
from rotgauss.cli import run
from rotgauss.serialize import dumps


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_period_json(capsys):
    code, out, _ = _run(capsys, "period", "--n", "3", "--K", "1", "--CK", "0")
    assert code == 0
    d = json.loads(out)
    assert d["half_period"] == pytest.approx(math.pi / 2)
    assert d["branch_gap"] is None and d["divergent"] is False


def test_validation_exit_code(capsys):
    code, _, err = _run(capsys, "period", "--n", "3", "--K", "1", "--CK", "-2")
    assert code == 2
    assert "C_K must exceed -1" in err
    code, _, err = _run(capsys, "solve", "--n", "2", "--K", "1")
    assert code == 2


def test_usage_exit_code(capsys):
    assert _run(capsys, "bogus")[0] == 64
    assert _run(capsys, "period", "--n", "3")[0] == 64
    assert _run(capsys, "solve", "--n", "3")[0] == 64
    assert _run(capsys, "sweep", "--n", "3", "--K", "a,b", "--CK", "0")[0] == 64


def test_solve_writes_csv_and_sidecar(tmp_path, capsys):
    out = tmp_path / "c.csv"
    code, _, _ = _run(capsys, "solve", "--n", "4", "--K", "1", "--CK", "0.5", "--count", "21", "--out", str(out))
    assert code == 0
    cols = read_curve_csv(out.read_text())
    assert len(cols["t"]) == 21
    meta = json.loads((tmp_path / "c.csv.json").read_text())
    assert meta["params"]["C_K"] == 0.5
    assert meta["endpoints"] == ["VerticalRim", "VerticalRim"]
    assert meta["metadata"]["full_period"] == pytest.approx(2 * meta["metadata"]["half_period"])


def test_solve_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        _run(capsys, "solve", "--n", "5", "--K", "-1", "--CK", "-0.5", "--count", "51", "--out", str(path))
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.csv.json").read_text() == (tmp_path / "b.csv.json").read_text()


def test_solve_prescribed_variants(capsys):
    code, out, _ = _run(capsys, "solve", "--riccati-a", "-0.1875", "--tmax", "3", "--step", "0.01")
    assert code == 0 and out.startswith("t,phi,psi")
    code, out, _ = _run(capsys, "solve", "--n", "3", "--bump", "1.0", "0.5", "--step", "0.01")
    assert code == 0
    assert _run(capsys, "solve", "--n", "3", "--riccati-a", "-1", "--bump", "1", "0.5")[0] == 64


def test_measure_paper_convention(capsys):
    code, out, _ = _run(capsys, "measure", "--n", "4", "--K", "-1", "--CK", "-1", "--convention", "paper",
                        "--tmin", "-25")
    assert code == 0
    d = json.loads(out)
    assert d["area"][0]["value"] == pytest.approx(16 * math.pi / 3)
    assert d["area"][0]["tail_bound"] < 1e-4
    code, out, _ = _run(capsys, "measure", "--n", "3", "--K", "1", "--CK", "0")
    d = json.loads(out)
    assert [r["convention"] for r in d["volume"]] == ["geometric", "paper"]


def test_mesh_obj(tmp_path, capsys):
    path = tmp_path / "m.obj"
    code, _, _ = _run(capsys, "mesh", "--n", "3", "--K", "1", "--CK", "0", "--count", "11", "--resolution", "8",
                      "--out", str(path))
    assert code == 0
    m = read_obj(path.read_text())
    assert m.is_closed() and len(m.vertices) == 9 * 8 + 2
    assert _run(capsys, "mesh", "--n", "3", "--K", "1", "--resolution", "4")[0] == 2


def test_verify_suite(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "riccati")
    assert code == 0 and json.loads(out)["pass"] is True


def test_verify_failure_exit(monkeypatch, capsys):
    import rotgauss.cli as cli

    monkeypatch.setattr(cli, "run_suite", lambda suite, seed: {"checks": [], "pass": False})
    assert _run(capsys, "verify")[0] == 3


def test_riccati_csv(capsys):
    code, out, _ = _run(capsys, "riccati", "--a", "-0.25", "--tmin", "1", "--tmax", "10", "--count", "5")
    assert code == 0
    lines = out.strip().split("\r\n")
    assert lines[0] == "t,phi_paper,phi_corrected,residual_paper,residual_corrected"
    assert len(lines) == 6
    assert abs(float(lines[-1].split(",")[-1])) < 1e-12


def test_sweep_rows(capsys):
    code, out, _ = _run(capsys, "sweep", "--n", "4", "--K", "1,-1", "--CK", "0,-1,-2", "--jobs", "3")
    assert code == 0
    rows = [r.split(",") for r in out.strip().split("\r\n")]
    assert len(rows) == 7 and rows[0][0] == "index"
    assert [r[0] for r in rows[1:]] == [str(i) for i in range(6)]
    # K = 1 with C_K = -1 and -2 is rejected but reported in place
    assert rows[2][-1] != "ok" and rows[1][-1] == "ok"
    assert rows[5][9] == "true"


def test_tolerance_env(monkeypatch, capsys):
    monkeypatch.setenv("ROTGAUSS_TOL", "1e-6")
    assert _run(capsys, "period", "--n", "5", "--K", "2", "--CK", "0.5")[0] == 0
    monkeypatch.setenv("ROTGAUSS_TOL", "tight")
    assert _run(capsys, "period", "--n", "5", "--K", "2", "--CK", "0.5")[0] == 64


def test_dumps_precision():
    text = dumps({"x": 0.1, "y": [1, float("nan")], "z": np.float64(2.0), "ok": True}, indent=None)
    assert text == '{"x":0.10000000000000001,"y":[1,null],"z":2.0,"ok":true}'
    assert json.loads(text)["x"] == 0.1
