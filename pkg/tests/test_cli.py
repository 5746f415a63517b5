import csv
import dataclasses
import subprocess
import sys

import pytest

from conftest import TRADEOFF_CONFIG
from superabsorb import cli
from superabsorb.units import REFERENCE_CONFIG, dump_config


@pytest.fixture
def cfg_path(tmp_path):
    def make(cfg=REFERENCE_CONFIG, name="cfg.json"):
        path = tmp_path / name
        path.write_text(dump_config(cfg))
        return str(path)
    return make


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_predict_prints_known_values(cfg_path, capsys):
    assert cli.main(["predict", "--config", cfg_path()]) == 0
    out = dict(line.split()[:2] for line in capsys.readouterr().out.splitlines())
    assert float(out["delta_eta_e2ls"]) == pytest.approx(0.05, abs=1e-12)
    assert float(out["n_conf_closed_form"]) == pytest.approx(7.6885e6, rel=1e-4)


def test_predict_csv(cfg_path, tmp_path):
    out = tmp_path / "pred.csv"
    assert cli.main(["predict", "--config", cfg_path(), "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0] == ["quantity", "value", "unit"]
    assert "chi_conf" in [r[0] for r in rows]


def test_simulate_schema_and_rows(cfg_path, tmp_path, capsys):
    out = tmp_path / "cycles.csv"
    assert cli.main(["simulate", "--config", cfg_path(), "--cycles", "1", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0] == cli.CYCLE_HEADER
    assert len(rows) == 2
    assert rows[1][0] == "0"
    assert "max_rel_dev_power" in capsys.readouterr().out


def test_outputs_are_byte_identical(cfg_path, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert cli.main(["simulate", "--config", cfg_path(), "--cycles", "4", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r\n" not in a.read_bytes()


def test_sweep_schema(cfg_path, tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    args = ["sweep", "--config", cfg_path(), "--n-min", "9", "--n-max", "21", "--out", str(out)]
    assert cli.main(args) == 0
    rows = read_rows(out)
    assert rows[0] == ["n", "p_first_cycle", "p_e2ls", "p_separable", "chi_conf"]
    assert [r[0] for r in rows[1:]] == [str(n) for n in range(9, 22, 2)]
    text = capsys.readouterr().out
    assert "slope_separable 1.000000" in text


def test_sweep_rejects_even_range(cfg_path, tmp_path):
    args = ["sweep", "--config", cfg_path(), "--n-min", "8", "--out", str(tmp_path / "x.csv")]
    assert cli.main(args) == 2
    assert not (tmp_path / "x.csv").exists()


def test_tradeoff_negative_gaps_exit_code(cfg_path, tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert cli.main(["tradeoff", "--config", cfg_path(), "--out", str(out)]) == 4
    assert "bound not evaluated: negative gaps" in capsys.readouterr().err
    assert not out.exists()


def test_tradeoff_positive_gap_config(cfg_path, tmp_path, capsys):
    cfg = dataclasses.replace(TRADEOFF_CONFIG, samples_per_stroke=50)
    out = tmp_path / "t.csv"
    assert cli.main(["tradeoff", "--config", cfg_path(cfg), "--n", "9", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0] == ["t", "stroke", "j", "sigma_dot", "a_cl", "a_qm", "a_mean", "ratio_ok"]
    assert len(rows) == 101
    assert {r[-1] for r in rows[1:]} == {"true"}
    text = capsys.readouterr().out
    assert "satisfied true" in text and "current_bound_ok true" in text


def test_tradeoff_gibbs_start(cfg_path, tmp_path):
    cfg = dataclasses.replace(TRADEOFF_CONFIG, samples_per_stroke=20)
    out = tmp_path / "g.csv"
    assert cli.main(["tradeoff", "--config", cfg_path(cfg), "--n", "9", "--initial", "gibbs",
                     "--out", str(out)]) == 0
    rows = read_rows(out)[1:]
    hot = [abs(float(r[2])) for r in rows if r[1] == "hot"]
    cold = [abs(float(r[2])) for r in rows if r[1] == "cold"]
    assert max(hot) < 1e-9 * max(cold)


def test_oracle_output(capsys):
    assert cli.main(["oracle", "--n", "5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "0.5,3,3,3" in lines
    assert cli.main(["oracle", "--n", "40"]) == 2


def test_tf_model(tmp_path, capsys):
    out = tmp_path / "tf.csv"
    assert cli.main(["tf-model", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "slope_sd 1.000000" in text and "slope_bd 2.000000" in text
    rows = read_rows(out)
    assert rows[0] == ["n_d", "mode", "rate", "slope"]
    assert len(rows) == 17


@pytest.mark.parametrize("content", ["{not json", '{"n_qubits": 31}', "[]"])
def test_malformed_config(tmp_path, content, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(content)
    out = tmp_path / "o.csv"
    assert cli.main(["simulate", "--config", str(bad), "--out", str(out)]) == 2
    assert not out.exists()
    assert capsys.readouterr().out == ""


def test_invalid_physics_config(cfg_path, tmp_path):
    cfg = dataclasses.replace(REFERENCE_CONFIG, temp_cold=0.05)
    assert cli.main(["predict", "--config", cfg_path(cfg)]) == 2
    cfg = dataclasses.replace(REFERENCE_CONFIG, n_qubits=30)
    assert cli.main(["predict", "--config", cfg_path(cfg)]) == 2


def test_missing_config_file(tmp_path):
    assert cli.main(["predict", "--config", str(tmp_path / "nope.json")]) == 2


def test_module_entry_point(cfg_path):
    res = subprocess.run([sys.executable, "-m", "superabsorb", "predict", "--config", cfg_path()],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "chi_conf" in res.stdout
