import json
import subprocess
import sys

import pytest

from metareflect import experiments as ex
from metareflect.cli import EXIT_COMPUTE, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, run

HEADER = "sweep_value,pr_e1_a1,pr_e1_a2,pr_e2,pr_e3_upper,mc_e1,mc_e1_se,mc_e2,mc_e2_se,mc_e3,mc_e3_se,n,seed"


def _run(tmp_path, *args, name="out.csv"):
    out = tmp_path / name
    code = run([*args, "--out", str(out)])
    return code, out.read_text() if out.exists() else None


def test_sweep_length_rows_and_header(tmp_path):
    code, text = _run(tmp_path, "sweep-length", "--lengths", "1,5,10,20,30", "--samples", "20000", "--seed", "4")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == HEADER
    rows = ex.read_csv(text)
    assert [r.sweep_value for r in rows] == [1, 5, 10, 20, 30]
    assert [r.seed for r in rows] == [4, 5, 6, 7, 8]
    a1 = [r.pr_e1_a1 for r in rows]
    assert max(a1) - min(a1) < 1e-6
    e2 = [r.pr_e2 for r in rows]
    assert all(b >= a - 1e-6 for a, b in zip(e2, e2[1:]))
    for r in rows:
        assert r.mc_e3 <= min(r.mc_e1, r.mc_e2)


def test_twelve_significant_digits(tmp_path):
    _, text = _run(tmp_path, "point", "--samples", "1000")
    value = text.splitlines()[1].split(",")[2]
    assert len(value.replace("0.", "", 1).lstrip("0")) <= 12


def test_rerun_is_byte_identical(tmp_path):
    args = ("sweep-length", "--lengths", "2,4", "--samples", "30000", "--seed", "11")
    _, first = _run(tmp_path, *args, name="a.csv")
    _, second = _run(tmp_path, *args, "--workers", "3", name="b.csv")
    assert first == second


def test_sweep_tx(tmp_path):
    code, text = _run(tmp_path, "sweep-tx", "--txx", "2,6,10,14,18", "--length", "5", "--samples", "20000")
    assert code == EXIT_OK
    rows = ex.read_csv(text)
    assert len(rows) == 5
    for r in rows:
        for v in (r.pr_e1_a1, r.pr_e1_a2, r.pr_e2, r.pr_e3_upper, r.mc_e1, r.mc_e2, r.mc_e3):
            assert 0.0 <= v <= 1.0
        assert r.mc_e3 <= r.pr_e3_upper + 4 * max(r.mc_e1_se, r.mc_e2_se)


def test_sweep_tx_longer_objects_hit_more(tmp_path):
    _, short = _run(tmp_path, "sweep-tx", "--txx", "2,10,18", "--length", "5", "--samples", "1000", name="s.csv")
    _, long_ = _run(tmp_path, "sweep-tx", "--txx", "2,10,18", "--length", "20", "--samples", "1000", name="l.csv")
    for a, b in zip(ex.read_csv(short), ex.read_csv(long_)):
        assert b.pr_e2 > a.pr_e2


def test_sweep_tx_outside_disk_is_usage_error(tmp_path, capsys):
    code, _ = _run(tmp_path, "sweep-tx", "--txx", "2,40")
    assert code == EXIT_USAGE
    assert "x_Tx=40" in capsys.readouterr().err


def test_json_output(tmp_path):
    code, text = _run(tmp_path, "point", "--samples", "5000", "--json", name="o.json")
    assert code == EXIT_OK
    records = json.loads(text)
    assert list(records[0]) == list(ex.FIELDS)
    assert records[0]["n"] == 5000


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"samples": 1234, "seed": 9, "length": 7.0}))
    assert run(["point", "--config", str(cfg), "--seed", "3", "--show-config"]) == EXIT_OK
    shown = json.loads(capsys.readouterr().out)
    assert shown["samples"] == 1234 and shown["seed"] == 3 and shown["length"] == 7.0


def test_bad_config_key(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(["point", "--config", str(cfg)]) == EXIT_USAGE


def test_usage_errors():
    assert run([]) == EXIT_USAGE
    assert run(["point", "--tx", "nope"]) == EXIT_USAGE
    assert run(["validate", "--configs", "0"]) == EXIT_USAGE
    assert run(["point", "--tx", "40,0"]) == EXIT_USAGE


def test_validate_passes(tmp_path, capsys):
    code, text = _run(tmp_path, "validate", "--configs", "8", "--samples", "50000", "--seed", "2")
    assert code == EXIT_OK
    assert "8/8 configurations passed" in capsys.readouterr().out
    assert len(ex.read_csv(text)) == 8


def test_validate_detects_loose_quadrature(capsys):
    code = run(["validate", "--configs", "10", "--samples", "20000", "--tol", "1e-1"])
    assert code == EXIT_VALIDATION
    assert "FAIL" in capsys.readouterr().out


def test_compute_error_exit_code(tmp_path, monkeypatch, capsys):
    from metareflect import analytic
    from metareflect.errors import QuadratureFailure

    def boom(*a, **k):
        raise QuadratureFailure("forced")

    monkeypatch.setattr(analytic, "reflection_report", boom)
    code, _ = _run(tmp_path, "sweep-length", "--lengths", "3,4", "--samples", "100")
    assert code == EXIT_COMPUTE
    assert "row 0 (L=3)" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "metareflect", "point", "--samples", "2000"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[0] == HEADER
