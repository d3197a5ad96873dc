import csv
import hashlib
import io
import json
import time

import numpy as np
import pytest

from rashba_landau import cli, spectrum
from rashba_landau.params import NaturalParams


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_spectrum_decoupled(capsys):
    code, out, _ = run(capsys, "spectrum", "--s-max", "1", "--a-tilde", "0", "--g-tilde", "0.1")
    assert code == 0
    r = rows(out)
    assert [(x["s"], x["branch"]) for x in r] == [("0", "lll"), ("1", "minus"), ("1", "plus")]
    assert np.allclose([float(x["E_hbar_omega"]) for x in r], [0.4, 0.6, 1.4], atol=1e-15)
    assert "E_meV" not in r[0]


def test_spectrum_coupled(capsys):
    _, out, _ = run(capsys, "spectrum", "--s-max", "1", "--a-tilde", "0.3", "--g-tilde", "0.1")
    e = [float(x["E_hbar_omega"]) for x in rows(out)]
    assert abs(e[1] - (1 - 0.5830952)) < 1e-7 and abs(e[2] - (1 + 0.5830952)) < 1e-7


def test_spectrum_sweep_matches_block(capsys):
    _, out, _ = run(capsys, "spectrum", "--s-max", "20", "--a-tilde", "0.3", "--g-tilde", "0.1")
    p = NaturalParams(0.3, 0.1)
    for x in rows(out)[1:]:
        s = int(x["s"])
        vals = np.linalg.eigvalsh(spectrum.block_matrix(s, p))
        ref = vals[1] if x["branch"] == "plus" else vals[0]
        assert abs(float(x["E_hbar_omega"]) - ref) < 1e-12


def test_spectrum_si_adds_mev(capsys):
    code, out, _ = run(capsys, "spectrum", "--s-max", "2", "--b-tesla", "1", "--mass-ratio", "0.067",
                       "--g-factor", "-0.44", "--alpha-ev-nm", "0.01")
    assert code == 0
    r = rows(out)
    assert "E_meV" in r[0]
    # hbar omega at 1 T for m* = 0.067 m0 is about 1.728 meV
    ratio = float(r[0]["E_meV"]) / float(r[0]["E_hbar_omega"])
    assert abs(ratio - 1.7279) < 1e-3


def test_spectrum_json(capsys):
    _, out, _ = run(capsys, "spectrum", "--s-max", "1", "--format", "json")
    doc = json.loads(out)
    assert doc["parameters"]["a_tilde"] == cli.DEFAULT_A_TILDE
    assert len(doc["levels"]) == 3


def test_xi_flag(capsys):
    _, a, _ = run(capsys, "spectrum", "--s-max", "2", "--xi", "0.4")
    _, b, _ = run(capsys, "spectrum", "--s-max", "2", "--g-tilde", "0.1")
    assert a.splitlines()[1:] == b.splitlines()[1:]


def texture_rows(capsys, *argv):
    code, out, _ = run(capsys, "texture", "--extent", "3", "--resolution", "21", *argv)
    assert code == 0
    return np.loadtxt(out.splitlines()[1:], delimiter=",")


def test_texture_lll(capsys):
    d = texture_rows(capsys, "--branch", "lll", "--m", "0")
    assert np.all(d[:, 3] == 0) and np.all(d[:, 4] == 0)
    assert np.array_equal(d[:, 5], -d[:, 2])


def test_texture_no_rashba(capsys):
    d = texture_rows(capsys, "--s", "1", "--m", "1", "--a-tilde", "0", "--branch", "plus")
    assert np.all(d[:, 3] == 0) and np.all(d[:, 4] == 0)


def test_texture_branch_flip(capsys):
    plus = texture_rows(capsys, "--s", "1", "--m", "1", "--branch", "plus")
    minus = texture_rows(capsys, "--s", "1", "--m", "1", "--branch", "minus")
    assert np.max(np.abs(plus[:, 3] + minus[:, 3])) < 1e-10
    assert np.max(np.abs(plus[:, 4] + minus[:, 4])) < 1e-10


def test_texture_weights(capsys):
    one = texture_rows(capsys, "--s", "1", "--m", "1")
    w = texture_rows(capsys, "--s", "1", "--weight", "1:1:0")
    assert np.array_equal(one, w)
    mix = texture_rows(capsys, "--s", "1", "--weight", "0:1:0", "--weight", "2:0:1")
    assert mix.shape == one.shape


def test_texture_json_normalized(capsys):
    code, out, _ = run(capsys, "texture", "--s", "2", "--m", "0", "--extent", "2", "--resolution", "5",
                       "--normalized", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["normalized"] is True and len(doc["sz"]) == 25


@pytest.mark.parametrize("argv", [
    ["texture", "--branch", "lll", "--s", "1"],
    ["texture", "--s", "0", "--branch", "plus"],
    ["texture", "--m", "1", "--weight", "1:1:0"],
    ["texture", "--weight", "bad"],
    ["texture", "--resolution", "1"],
    ["spectrum", "--a-tilde", "0.3", "--b-tesla", "1"],
    ["spectrum", "--xi", "0.4", "--g-tilde", "0.1"],
    ["spectrum", "--b-tesla", "1"],
    ["spectrum", "--b-tesla", "-1", "--mass-ratio", "0.067", "--g-factor", "2"],
    ["spectrum", "--config", "/nonexistent/cfg.json"],
    ["gauge-check", "--terms", "0"],
    ["verify", "--quick", "--full"],
    ["nonsense"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "gaas.json"
    cfg.write_text(json.dumps({"b_z_tesla": 2.0, "mass_ratio": 0.067, "g_factor": -0.44,
                               "alpha_ev_nm": 0.005}))
    code, out, _ = run(capsys, "spectrum", "--s-max", "1", "--config", str(cfg))
    assert code == 0 and "E_meV" in out
    code, _, _ = run(capsys, "spectrum", "--config", str(cfg), "--b-tesla", "1")
    assert code == 2


@pytest.mark.parametrize("argv,expected", [
    ([], 0),
    (["--terms", "2"], 1),
    (["--extent", "0.5", "--terms", "10"], 0),
])
def test_gauge_check_exit(capsys, tmp_path, argv, expected):
    out = tmp_path / "gauge.json"
    code, stdout, _ = run(capsys, "gauge-check", "--out", str(out), *argv)
    assert code == expected
    doc = json.loads(out.read_text())
    assert doc["passed"] == (expected == 0)
    assert ("PASS" if expected == 0 else "FAIL") in stdout
    if not argv:
        assert doc["max_abs_deviation"] < 1e-8


def test_verify_quick(capsys, tmp_path):
    out = tmp_path / "verify.json"
    t0 = time.perf_counter()
    code, stdout, _ = run(capsys, "verify", "--quick", "--out", str(out))
    assert time.perf_counter() - t0 < 30
    assert code == 0
    doc = json.loads(out.read_text())
    names = {c["name"] for c in doc["checks"]}
    assert {"orthonormality", "ladder", "schrodinger_residual", "gaussian_moments",
            "laguerre_crosscheck", "gauge_invariance"} <= names
    assert all(c["passed"] for c in doc["checks"])
    assert stdout.count("PASS") == len(doc["checks"])


def test_verify_detects_corrupted_kappa(capsys, monkeypatch):
    real = spectrum.kappa
    monkeypatch.setattr(spectrum, "kappa", lambda s, p: 1.01 * real(s, p))
    code, _, err = run(capsys, "verify", "--quick")
    assert code == 1
    assert "FAIL  schrodinger_residual" in err


def test_outputs_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(capsys, "texture", "--s", "1", "--m", "1", "--extent", "2", "--resolution", "17",
                   "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_manifest(tmp_path, capsys):
    out = tmp_path / "levels.csv"
    run(capsys, "spectrum", "--s-max", "3", "--out", str(out), "--xi", "0.25")
    man = json.loads((tmp_path / "levels.csv.manifest.json").read_text())
    assert man["command"] == "spectrum"
    assert man["sha256"] == hashlib.sha256(out.read_bytes()).hexdigest()
    assert man["parameters"]["xi_tilde"] == 0.25
    assert man["options"]["s_max"] == 3
    assert man["version"] == cli.__version__
    assert "created" in man
    assert b"\r" not in out.read_bytes()


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "rashba_landau", "spectrum", "--s-max", "0"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "s,branch,E_hbar_omega"
