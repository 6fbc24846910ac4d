import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from spinwitness.cli import main, parse_grid, parse_sites


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "spectrum", "--spin", "1", "--sites", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["eigenvalues"][0] == pytest.approx(-4.0)
    levels = {round(r["E"], 9): r["degeneracy"] for r in doc["rows"]}
    assert levels == {-4.0: 1, -2.0: 3, 2.0: 5}
    assert "convention" in doc["provenance"]


def test_csv_has_provenance(capsys):
    code, out, _ = run(capsys, "spectrum", "--spin", "1/2", "--sites", "2")
    assert code == 0
    assert out.startswith("# artifact: spinwitness")
    assert "H = 2J S1.S2" in out


@pytest.mark.parametrize("argv", [
    ["spectrum", "--spin", "0.3"],
    ["spectrum", "--spin", "1/2", "--sites", "1"],
    ["spectrum", "--coupling", "abc"],
    ["witness", "--spin", "1/2"],
    ["witness", "--temperature", "-1"],
    ["spectrum", "--format", "svg-plot", "--out", "x.csv"],
    ["spectrum", "--sites", "2..4"],
])
def test_invalid_configuration_exits_2(capsys, argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_too_large_exits_3(capsys, monkeypatch):
    monkeypatch.setenv("SPINWITNESS_MAX_DIM", "100")
    code, _, err = run(capsys, "spectrum", "--spin", "1", "--sites", "6")
    assert code == 3 and "too large" in err


def test_io_error_exits_4(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, _ = run(capsys, "spectrum", "--out", str(blocker / "sub" / "out.csv"))
    assert code == 4


def test_no_crossing_exits_5(capsys):
    code, _, _ = run(capsys, "tc", "--coupling", "-1", "--sites", "4")
    assert code == 5


def test_cache_hit_gives_identical_output(capsys, tmp_path):
    argv = ["spectrum", "--spin", "1", "--sites", "4", "--cache-dir", str(tmp_path)]
    c1, out1, err1 = run(capsys, *argv)
    c2, out2, err2 = run(capsys, *argv)
    assert c1 == c2 == 0
    assert "miss" in err1 and "hit" in err2
    assert out1 == out2


def test_env_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SPINWITNESS_CACHE_DIR", str(tmp_path))
    run(capsys, "spectrum", "--sites", "4")
    _, _, err = run(capsys, "spectrum", "--sites", "4")
    assert "hit" in err and any(tmp_path.iterdir())


def test_witness_signs(capsys):
    T = f"0.5,{float(2 / np.log(3))!r},3"
    code, out, _ = run(capsys, "witness", "--spin", "1/2", "--sites", "2", "--temperature", T)
    assert code == 0
    r = rows(out)
    W = [float(x["W"]) for x in r]
    assert W[0] < 0 and r[0]["entangled"] == "True"
    assert abs(W[1]) < 1e-12
    assert W[2] > 0 and r[2]["entangled"] == "False"


def test_negativity_command(capsys):
    code, out, _ = run(capsys, "negativity", "--spin", "1", "--sites", "2", "--temperature", "0.5,2,3")
    assert code == 0
    r = rows(out)
    for x in r:
        assert float(x["relation_rhs"]) == pytest.approx(float(x["N"]), abs=1e-8) or float(x["N"]) == 0
    assert float(r[-1]["N"]) == 0


def test_tc_scales_with_coupling(capsys):
    code, out, _ = run(capsys, "tc", "--spin", "1", "--sites", "2", "--coupling", "2")
    assert code == 0
    tc = float(rows(out)[0]["T_c"])
    assert tc == pytest.approx(2 * 6 / np.log(10), abs=1e-5)


def test_emin_command(capsys):
    code, out, _ = run(capsys, "emin", "--spin", "1/2", "--sites", "2..4", "--restarts", "4")
    assert code == 0
    r = {int(x["L"]): x for x in rows(out)}
    assert float(r[3]["E_min_numeric"]) == pytest.approx(-0.375, abs=1e-8)
    assert r[3]["E_min_closed_form"] == ""
    assert float(r[4]["E_min_closed_form"]) == pytest.approx(-1.0)


def test_thermal_command(capsys):
    code, out, _ = run(capsys, "thermal", "--sites", "2", "--temperature", "1:2:3")
    assert code == 0
    assert [float(x["T"]) for x in rows(out)] == [1.0, 1.5, 2.0]


def test_scan_fig1(capsys):
    code, out, _ = run(capsys, "scan", "fig1", "--spins", "1/2,1")
    assert code == 0
    r = rows(out)
    assert float(r[0]["T_c"]) == pytest.approx(2 / np.log(3), abs=1e-6)


def test_scan_fig2_single_spin(capsys):
    code, out, _ = run(capsys, "scan", "fig2", "--spin", "1/2", "--sites", "2..6")
    assert code == 0
    r = rows(out)
    assert r[0]["L"] == "2" and float(r[0]["T_c"]) == pytest.approx(1.8205, abs=1e-4)
    assert "monotone_decreasing_even_L: True" in out


def test_scan_fig3_svg(capsys, tmp_path):
    out = tmp_path / "fig3.csv"
    code, _, _ = run(capsys, "scan", "fig3", "--format", "svg-plot", "--out", str(out),
                     "--temperature", "0.1:4:12", "--coupling-grid", "0.1:2:6")
    assert code == 0
    assert len(rows(out.read_text())) == 72
    assert out.with_suffix(".svg").read_text().lstrip().startswith("<?xml")


def test_scan_outputs_deterministic(capsys, tmp_path):
    paths = []
    for k in range(2):
        p = tmp_path / f"run{k}" / "fig1.csv"
        assert main(["scan", "fig1", "--spins", "1/2,1,3/2", "--format", "svg-plot", "--out", str(p)]) == 0
        paths.append(p)
    capsys.readouterr()
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].with_suffix(".svg").read_bytes() == paths[1].with_suffix(".svg").read_bytes()


def test_config_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nspin = 1\ncoupling = 2\n")
    _, out, _ = run(capsys, "tc", "--config", str(cfg))
    assert float(rows(out)[0]["T_c"]) == pytest.approx(12 / np.log(10), abs=1e-5)
    _, out, _ = run(capsys, "tc", "--config", str(cfg), "--coupling", "1")
    assert float(rows(out)[0]["T_c"]) == pytest.approx(6 / np.log(10), abs=1e-5)


def test_config_errors(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run(capsys, "tc", "--config", str(cfg))[0] == 2
    assert run(capsys, "tc", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "8 passed, 0 failed" in out


def test_parsers():
    assert parse_sites("2..5") == [2, 3, 4, 5]
    assert parse_grid("0.1:4:64", "t")[-1] == pytest.approx(4.0)
    assert len(parse_grid("0.1:4:64", "t")) == 64
    assert parse_grid("1,2.5", "t") == [1.0, 2.5]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "spinwitness", "--version"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "spinwitness" in res.stdout
