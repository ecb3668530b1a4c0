"""Command-line surface: formats, determinism, exit codes, round trips."""

import json
import math

import numpy as np
import pytest

from ptsat import cli, models, rootfinder

SQW3 = ["--model", "sqwell", "--V0", "0", "--V1", "5", "--a", "2",
        "--rect", "0,9,-3,3", "--grid", "120,60"]


def run(tmp_path, *argv):
    out = tmp_path / "out.dat"
    code = cli.main([*argv, "--out", str(out)])
    return code, out


# ----------------------------------------------------------------------
# spectrum
# ----------------------------------------------------------------------

def test_spectrum_json_schema_and_values(tmp_path):
    code, out = run(tmp_path, "spectrum", *SQW3)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["units"] == "hbar=1, 2m=1"
    assert doc["tool_version"]
    assert doc["source"] == "characteristic"
    assert doc["rect"]["nx"] == 120
    roots = doc["roots"]
    assert [round(r["re"], 4) for r in roots] == [0.4619, 1.8755, 4.3348, 7.9632]
    assert all(r["kind"] == "real" and r["pair_id"] is None for r in roots)
    assert all(r["residual"] < 1e-9 for r in roots)


def test_spectrum_deterministic_bytes(tmp_path):
    c1, out1 = run(tmp_path, "spectrum", *SQW3)
    data1 = out1.read_bytes()
    c2, out2 = run(tmp_path, "spectrum", *SQW3)
    assert c1 == c2 == 0
    assert data1 == out2.read_bytes()


def test_spectrum_roots_revalidate(tmp_path):
    _, out = run(tmp_path, "spectrum", *SQW3)
    doc = json.loads(out.read_text())
    f = models.characteristic(models.SquareWell(0.0, 5.0, 2.0))
    for r in doc["roots"]:
        res = abs(f(complex(r["re"], r["im"]))) / doc["f_scale"]
        assert res < max(r["residual"] * 2, 1e-15)


def test_spectrum_csv_format(tmp_path):
    code, out = run(tmp_path, "spectrum", *SQW3, "--format", "csv")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "re,im,kind,pair_id,residual"
    assert len(lines) == 5


def test_spectrum_empty_step(tmp_path):
    code, out = run(tmp_path, "spectrum", "--model", "step", "--V1", "5",
                    "--grid", "100,100")
    assert code == 0
    assert json.loads(out.read_text())["roots"] == []


def test_spectrum_analytic_rosen_morse(tmp_path):
    code, out = run(tmp_path, "spectrum", "--model", "rosen-morse",
                    "--s", "3.2", "--c", "1", "--analytic")
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["source"] == "analytic"
    assert [round(r["re"], 2) for r in doc["roots"]] == [-10.14, -4.63, -0.75, 24.96]


def test_spectrum_ccpe_pairing(tmp_path):
    code, out = run(tmp_path, "spectrum", "--model", "linear", "--V1", "5",
                    "--a", "2", "--rect", "0,12,-4,4", "--grid", "160,80")
    assert code == 0
    doc = json.loads(out.read_text())
    pairs = [r for r in doc["roots"] if r["pair_id"] is not None]
    assert len(pairs) == 2
    assert pairs[0]["pair_id"] == pairs[1]["pair_id"] == 1
    assert {p["kind"] for p in pairs} == {"ccpe_plus", "ccpe_minus"}


# ----------------------------------------------------------------------
# configuration
# ----------------------------------------------------------------------

def test_config_file_with_flag_override(tmp_path):
    cfgfile = tmp_path / "run.json"
    cfgfile.write_text(json.dumps({"model": "sqwell", "v0": 0.0, "v1": 5.0,
                                   "a": 2.0, "rect": [0, 9, -3, 3],
                                   "grid": [120, 60]}))
    out = tmp_path / "o.json"
    code = cli.main(["spectrum", "--config", str(cfgfile), "--grid", "100,50",
                     "--out", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["rect"]["nx"] == 100  # flag wins


def test_config_unknown_key_rejected(tmp_path):
    cfgfile = tmp_path / "run.json"
    cfgfile.write_text(json.dumps({"model": "step", "v1": 5.0, "colour": "red"}))
    assert cli.main(["spectrum", "--config", str(cfgfile)]) == cli.EXIT_CONFIG


def test_missing_parameters_exit_2():
    assert cli.main(["spectrum", "--model", "sqwell", "--V0", "5"]) == cli.EXIT_CONFIG
    assert cli.main(["spectrum", "--model", "rosen-morse", "--s", "3.2",
                     "--c", "1"]) == cli.EXIT_CONFIG  # no --analytic/--oracle
    assert cli.main(["spectrum", "--model", "sqwell", "--V0", "0", "--V1", "5",
                     "--a", "2", "--rect", "0,9"]) == cli.EXIT_CONFIG


# ----------------------------------------------------------------------
# wavefunction
# ----------------------------------------------------------------------

def test_wavefunction_csv(tmp_path):
    out = tmp_path / "wf.csv"
    code = cli.main(["wavefunction", *SQW3[:8], "--energy",
                     "0.461930613097,0", "--x-points", "801",
                     "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert "\r" not in text
    lines = text.splitlines()
    assert lines[0] == "x,re_psi,im_psi,abs_psi,current"
    assert len(lines) == 802
    # 12 significant digits in scientific notation
    first = lines[1].split(",")
    assert all("e" in v and len(v.split("e")[0].lstrip("-").replace(".", "")) == 12
               for v in first)
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    x, abs_psi = data[:, 0], data[:, 3]
    assert np.max(np.abs(abs_psi - abs_psi[::-1])) < 1e-6  # real root: symmetric


def test_wavefunction_residual_gate(tmp_path):
    out = tmp_path / "wf.csv"
    args = ["wavefunction", *SQW3[:8], "--energy", "0.75,0", "--out", str(out)]
    assert cli.main(args) == cli.EXIT_RESIDUAL
    assert cli.main([*args, "--force"]) == 0


def test_wavefunction_ccpe_sidecar(tmp_path):
    out = tmp_path / "wf.csv"
    code = cli.main(["wavefunction", "--model", "linear", "--V1", "5", "--a", "2",
                     "--energy", "4.29596972715414,1.56536051652765",
                     "--out", str(out)])
    assert code == 0
    side = json.loads((tmp_path / "wf.reflection.json").read_text())
    assert side["max_rel_dev"] < 1e-3
    assert side["ratio_median"] > 0


# ----------------------------------------------------------------------
# contours
# ----------------------------------------------------------------------

def test_contours_json(tmp_path):
    code, out = run(tmp_path, "contours", "--model", "linear", "--V1", "5",
                    "--a", "2", "--rect", "0,12,-4,4", "--grid", "60,40")
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["re_zero"] and doc["im_zero"]
    for line in doc["re_zero"] + doc["im_zero"]:
        for p in line:
            assert 0 <= p["re"] <= 12 and -4 <= p["im"] <= 4


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def test_verify_linear_passes(tmp_path):
    code, out = run(tmp_path, "verify", "--model", "linear", "--V1", "5",
                    "--a", "2", "--rect", "0,12,-4,4")
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["passed"] is True
    assert len(doc["agreement"]) == 4
    assert doc["unmatched_reference"] == [] and doc["unmatched_oracle"] == []
    assert all(p["delta"] < 1e-3 for p in doc["agreement"])


def test_verify_step_trivially_passes(tmp_path):
    code, out = run(tmp_path, "verify", "--model", "step", "--V1", "5",
                    "--grid", "120,60")
    assert code == 0
    assert json.loads(out.read_text())["agreement"] == []


def test_verify_detects_disagreement(tmp_path, monkeypatch):
    # a deliberately coarse oracle must fail verification with deltas
    from ptsat import oracle as oracle_mod

    def coarse_config(model):
        return oracle_mod.ShootingConfig(L=20.0, n_steps=300)

    monkeypatch.setattr(cli.oracle, "default_config", coarse_config)
    code, out = run(tmp_path, "verify", "--model", "rosen-morse",
                    "--s", "3.2", "--c", "1", "--rect=-12,26,-2,2")
    assert code == cli.EXIT_VERIFY
    doc = json.loads(out.read_text())
    assert doc["passed"] is False
    assert doc["unmatched_reference"] or doc["unmatched_oracle"]
